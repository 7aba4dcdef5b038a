from closure_mc.checker.cslcs import (
    CslcsChecker,
    GroupStats,
    TarjanState,
    check_group,
    sat_collective,
)
from closure_mc.checker.slcs import (
    SlcsChecker,
    WorklistStats,
    check_propagation,
    check_surrounded,
    sat,
)

__all__ = [
    "CslcsChecker",
    "GroupStats",
    "SlcsChecker",
    "TarjanState",
    "WorklistStats",
    "check_group",
    "check_propagation",
    "check_surrounded",
    "sat",
    "sat_collective",
]
