from collections.abc import Sequence
from enum import Enum
from functools import cached_property
from typing import Iterator, Optional

import numpy as np
from scipy import sparse

from closure_mc.exceptions import InvalidPointSetError, InvalidSpaceError
from closure_mc.spaces.pointset import PointSet
from closure_mc.utils import gather_rows


class BoundaryKind(Enum):
    Full = "full"
    Inner = "inner"
    Outer = "outer"


class Direction(Enum):
    Pre = "pre"
    Post = "post"


class GridLabels(Sequence):
    """(column, row) label of every pixel of a width x height grid, row 0 at the top"""

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height

    def __len__(self) -> int:
        return self.width * self.height

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        if index < 0:
            index += len(self)
        if not 0 <= index < len(self):
            raise IndexError(index)
        row, column = divmod(index, self.width)
        return (column, row)

    def index(self, label, *args) -> int:
        column, row = label
        if not (0 <= column < self.width and 0 <= row < self.height):
            raise ValueError(f"{label} is not a pixel of a {self.width}x{self.height} grid")
        return row * self.width + column

    def __eq__(self, other) -> bool:
        if isinstance(other, GridLabels):
            return (self.width, self.height) == (other.width, other.height)
        return NotImplemented

    def __repr__(self) -> str:
        return f"GridLabels({self.width}x{self.height})"


def _canonical_relation(relation, n: int) -> sparse.csr_matrix:
    """Drop self-loops and duplicates, sort every row"""
    coo = sparse.coo_matrix(relation)
    keep = coo.row != coo.col
    csr = sparse.csr_matrix(
        (np.ones(int(keep.sum()), dtype=bool), (coo.row[keep], coo.col[keep])),
        shape=(n, n),
    )
    csr.sum_duplicates()
    csr.sort_indices()
    return csr


class QuasiDiscreteSpace:
    """
    Finite closure space whose closure operator is derived from a binary relation

    Points are the indices 0..point_count-1. The relation is kept as a forward
    (successor) and a backward (predecessor) CSR adjacency; both are sorted,
    duplicate free and never contain self-loops, since the derived closure
    A | post(A) does not depend on them.
    """

    def __init__(self, relation, point_labels: Optional[Sequence] = None):
        shape = relation.shape
        if len(shape) != 2 or shape[0] != shape[1]:
            raise InvalidSpaceError(f"relation must be a square matrix, got shape {shape}")

        n = shape[0]
        self._forward = _canonical_relation(relation, n)
        self._backward = self._forward.transpose().tocsr()
        self._backward.sort_indices()

        if point_labels is not None and len(point_labels) != n:
            raise InvalidSpaceError(
                f"{len(point_labels)} point labels given for {n} points",
            )
        self._point_labels = point_labels

    @classmethod
    def from_edges(
        cls,
        point_count: int,
        sources,
        targets,
        point_labels: Optional[Sequence] = None,
        symmetric: bool = False,
    ) -> "QuasiDiscreteSpace":
        sources = np.asarray(sources, dtype=np.int64).ravel()
        targets = np.asarray(targets, dtype=np.int64).ravel()
        if sources.shape != targets.shape:
            raise InvalidSpaceError("edge sources and targets must have the same length")
        if sources.size and (
            min(sources.min(), targets.min()) < 0
            or max(sources.max(), targets.max()) >= point_count
        ):
            raise InvalidPointSetError(
                f"edge endpoints must be points of the space of {point_count} points",
            )
        if symmetric:
            sources, targets = (
                np.concatenate([sources, targets]),
                np.concatenate([targets, sources]),
            )

        relation = sparse.coo_matrix(
            (np.ones(sources.size, dtype=bool), (sources, targets)),
            shape=(point_count, point_count),
        )
        return cls(relation, point_labels)

    @property
    def point_count(self) -> int:
        return self._forward.shape[0]

    @property
    def edge_count(self) -> int:
        """Number of stored (directed) pairs"""
        return self._forward.nnz

    @property
    def forward(self) -> sparse.csr_matrix:
        return self._forward

    @property
    def backward(self) -> sparse.csr_matrix:
        return self._backward

    @property
    def point_labels(self) -> Sequence:
        if self._point_labels is None:
            return range(self.point_count)
        return self._point_labels

    def label(self, x: int):
        self._check_point(x)
        return self.point_labels[x]

    def _check_point(self, x: int):
        if not 0 <= x < self.point_count:
            raise InvalidPointSetError(
                f"point {x} is outside the space of {self.point_count} points",
            )

    def _check(self, a: PointSet):
        if not isinstance(a, PointSet):
            raise TypeError(f"expected a PointSet, got {type(a).__name__}")
        if a.universe != self.point_count:
            raise InvalidPointSetError(
                f"point set over {a.universe} points used with a space of {self.point_count} points",
            )

    def empty(self) -> PointSet:
        return PointSet.empty(self.point_count)

    def full(self) -> PointSet:
        return PointSet.full(self.point_count)

    def points(self, indices) -> PointSet:
        return PointSet.from_indices(self.point_count, indices)

    def post_of(self, rows: np.ndarray) -> np.ndarray:
        """Successors of every point in `rows`, with repetitions"""
        return gather_rows(self._forward.indptr, self._forward.indices, rows)

    def pre_of(self, rows: np.ndarray) -> np.ndarray:
        """Predecessors of every point in `rows`, with repetitions"""
        return gather_rows(self._backward.indptr, self._backward.indices, rows)

    def closure(self, a: PointSet) -> PointSet:
        self._check(a)
        mask = a.mask.copy()
        mask[self.post_of(a.indices())] = True
        return PointSet._wrap(mask)

    def interior(self, a: PointSet) -> PointSet:
        self._check(a)
        # x stays iff no predecessor of x lies outside a
        mask = a.mask.copy()
        mask[self.post_of(np.flatnonzero(~a.mask))] = False
        return PointSet._wrap(mask)

    def boundary(self, a: PointSet, kind: BoundaryKind = BoundaryKind.Full) -> PointSet:
        match kind:
            case BoundaryKind.Full:
                return self.closure(a) - self.interior(a)
            case BoundaryKind.Inner:
                return a - self.interior(a)
            case BoundaryKind.Outer:
                return self.closure(a) - a
            case _:
                raise ValueError(f"unknown boundary kind {kind!r}")

    def adjacent(self, x: int, direction: Direction = Direction.Post) -> PointSet:
        self._check_point(x)
        matrix = self._forward if direction is Direction.Post else self._backward
        row = matrix.indices[matrix.indptr[x] : matrix.indptr[x + 1]]
        mask = np.zeros(self.point_count, dtype=bool)
        mask[row] = True
        return PointSet._wrap(mask)

    def minimal_neighbourhood(self, x: int) -> PointSet:
        """Least set whose interior contains x"""
        neighbourhood = self.adjacent(x, Direction.Pre).mask.copy()
        neighbourhood[x] = True
        return PointSet._wrap(neighbourhood)

    def subspace(self, y: PointSet) -> "QuasiDiscreteSpace":
        """
        Restriction of the space to the points of y

        Points are renumbered densely in ascending order; the label of every
        point of the result is its index in this space.
        """
        self._check(y)
        idx = y.indices()
        relation = self._forward[idx][:, idx]
        return QuasiDiscreteSpace(relation, point_labels=idx.tolist())

    def coproduct(self, other: "QuasiDiscreteSpace") -> "QuasiDiscreteSpace":
        """Disjoint union; points of other are shifted by self.point_count"""
        relation = sparse.block_diag((self._forward, other._forward), format="csr")
        if self._point_labels is None and other._point_labels is None:
            labels = None
        else:
            labels = list(self.point_labels) + list(other.point_labels)
        return QuasiDiscreteSpace(relation, point_labels=labels)

    def is_symmetric(self) -> bool:
        return np.array_equal(self._forward.indptr, self._backward.indptr) and np.array_equal(
            self._forward.indices,
            self._backward.indices,
        )

    def is_topological(self) -> bool:
        """Whether the closure is idempotent, i.e. the reflexive closure of the relation is transitive"""
        forward = self._forward.astype(np.int64)
        two_steps = (forward @ forward).tocoo()
        off_diagonal = two_steps.row != two_steps.col
        rows = two_steps.row[off_diagonal]
        cols = two_steps.col[off_diagonal]
        if rows.size == 0:
            return True
        return bool(np.asarray(self._forward[rows, cols]).all())

    def edges(self) -> Iterator[tuple[int, int]]:
        """Stored pairs in ascending (source, target) order"""
        indptr = self._forward.indptr
        targets = self._forward.indices.tolist()
        for x in range(self.point_count):
            for i in range(indptr[x], indptr[x + 1]):
                yield (x, targets[i])

    @cached_property
    def forward_lists(self) -> tuple[list[int], list[int]]:
        """Forward CSR arrays as Python lists, for tight per-point loops"""
        return self._forward.indptr.tolist(), self._forward.indices.tolist()

    def has_same_relation(self, other: "QuasiDiscreteSpace") -> bool:
        return (
            self.point_count == other.point_count
            and np.array_equal(self._forward.indptr, other._forward.indptr)
            and np.array_equal(self._forward.indices, other._forward.indices)
        )

    def __repr__(self) -> str:
        return f"QuasiDiscreteSpace(points={self.point_count}, edges={self.edge_count})"
