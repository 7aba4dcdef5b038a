from closure_mc.spaces.builders import build_delta_graph, build_grid_4adj
from closure_mc.spaces.connectivity import is_path_connected, is_separation_connected
from closure_mc.spaces.model import ClosureModel
from closure_mc.spaces.pointset import PointSet
from closure_mc.spaces.space import (
    BoundaryKind,
    Direction,
    GridLabels,
    QuasiDiscreteSpace,
)

__all__ = [
    "BoundaryKind",
    "ClosureModel",
    "Direction",
    "GridLabels",
    "PointSet",
    "QuasiDiscreteSpace",
    "build_delta_graph",
    "build_grid_4adj",
    "is_path_connected",
    "is_separation_connected",
]
