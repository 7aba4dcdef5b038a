import numpy as np
from scipy.sparse.csgraph import connected_components

from closure_mc.exceptions import SizeLimitError
from closure_mc.spaces.pointset import PointSet
from closure_mc.spaces.space import QuasiDiscreteSpace

SEPARATION_LIMIT = 20


def is_path_connected(space: QuasiDiscreteSpace, a: PointSet) -> bool:
    """
    Whether every ordered pair of points of a is joined by a path inside a

    In a quasi-discrete space this is strong connectedness of the subgraph
    induced by a.
    """
    space._check(a)
    if len(a) <= 1:
        return True

    idx = a.indices()
    induced = space.forward[idx][:, idx]
    count, _ = connected_components(induced, directed=True, connection="strong")
    return count == 1


def is_separation_connected(
    space: QuasiDiscreteSpace,
    a: PointSet,
    limit: int = SEPARATION_LIMIT,
) -> bool:
    """
    Whether a cannot be split into two non-empty separated sets

    Bipartitions are searched exhaustively, so sets above `limit` points are
    refused, except the whole space of a symmetric relation where weak
    connectivity of the graph decides.
    """
    space._check(a)
    size = len(a)
    if size <= 1:
        return True

    if size > limit:
        if size == space.point_count and space.is_symmetric():
            count, _ = connected_components(space.forward, directed=False)
            return count == 1
        raise SizeLimitError(
            f"separation connectedness is only decided for up to {limit} points, got {size}",
        )

    idx = a.indices()
    induced = space.forward[idx][:, idx].tocoo()

    # undirected neighbour bitmask of every local point
    neighbours = np.zeros(size, dtype=np.int64)
    np.bitwise_or.at(neighbours, induced.row, np.left_shift(1, induced.col.astype(np.int64)))
    np.bitwise_or.at(neighbours, induced.col, np.left_shift(1, induced.row.astype(np.int64)))

    # every part containing local point 0, except a itself
    full = (1 << size) - 1
    parts = np.arange(1 << (size - 1), dtype=np.int64) * 2 + 1
    parts = parts[parts != full]
    if parts.size == 0:
        return True

    separated = np.ones(parts.size, dtype=bool)
    for i in range(size):
        inside = ((parts >> i) & 1) == 1
        leaks = (neighbours[i] & ~parts) != 0
        separated &= ~(inside & leaks)
    return not bool(separated.any())
