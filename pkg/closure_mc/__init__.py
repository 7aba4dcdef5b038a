"""
closure_mc checks spatial logic formulas on graphs, digital images and
multi-layer models seen as closure spaces.
"""

from .checker import CslcsChecker, SlcsChecker, check_group, sat, sat_collective
from .cli import run_spec
from .formats import build_multilayer_model, load_model
from .logic import parse_collective, parse_individual, parse_spec_program
from .spaces import ClosureModel, PointSet, QuasiDiscreteSpace

__all__ = [
    "ClosureModel",
    "CslcsChecker",
    "PointSet",
    "QuasiDiscreteSpace",
    "SlcsChecker",
    "build_multilayer_model",
    "check_group",
    "load_model",
    "parse_collective",
    "parse_individual",
    "parse_spec_program",
    "run_spec",
    "sat",
    "sat_collective",
]

try:
    from ._version import __version__
except ImportError:
    __version__ = "unknown"
