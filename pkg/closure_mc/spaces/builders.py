from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from closure_mc.exceptions import InvalidSpaceError
from closure_mc.spaces.space import GridLabels, QuasiDiscreteSpace


def build_grid_4adj(width: int, height: int) -> QuasiDiscreteSpace:
    """
    Digital image space with the symmetric 4-adjacency relation

    Pixel (column, row) is point row * width + column, row 0 being the top row.
    """
    if width < 1 or height < 1:
        raise InvalidSpaceError(f"grid dimensions must be positive, got {width}x{height}")

    idx = np.arange(width * height, dtype=np.int64).reshape(height, width)
    left, right = idx[:, :-1].ravel(), idx[:, 1:].ravel()
    up, down = idx[:-1, :].ravel(), idx[1:, :].ravel()
    sources = np.concatenate([left, up])
    targets = np.concatenate([right, down])

    return QuasiDiscreteSpace.from_edges(
        width * height,
        sources,
        targets,
        point_labels=GridLabels(width, height),
        symmetric=True,
    )


def delta_pairs(coords: np.ndarray, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Pairs (i < j), ascending, of positions at Euclidean distance at most delta

    Candidates come from a k-d tree with a small radius slack and are then
    filtered on exact squared distances.
    """
    if delta < 0:
        raise InvalidSpaceError(f"delta must be non-negative, got {delta}")

    coords = np.asarray(coords)
    if coords.shape[0] < 2:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty

    tree = cKDTree(coords)
    radius = delta * (1 + 1e-9) + 1e-12
    pairs = tree.query_pairs(r=radius, output_type="ndarray")
    if pairs.size == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty

    pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
    first, second = pairs[:, 0], pairs[:, 1]
    diff = coords[first] - coords[second]
    squared = (diff * diff).sum(axis=1)
    if np.issubdtype(coords.dtype, np.integer) and float(delta).is_integer():
        keep = squared <= int(delta) * int(delta)
    else:
        keep = squared <= delta * delta

    return first[keep].astype(np.int64), second[keep].astype(np.int64)


def build_delta_graph(
    coords,
    delta: float,
    point_labels: Optional[Sequence] = None,
) -> QuasiDiscreteSpace:
    """Symmetric relation linking distinct positions at distance at most delta"""
    coords = np.asarray(coords)
    if coords.size == 0:
        coords = coords.reshape(0, 2)
    if coords.ndim != 2 or coords.shape[1] != 2:
        raise InvalidSpaceError(f"coordinates must be a list of 2D positions, got shape {coords.shape}")

    first, second = delta_pairs(coords, delta)
    return QuasiDiscreteSpace.from_edges(
        coords.shape[0],
        first,
        second,
        point_labels=point_labels,
        symmetric=True,
    )
