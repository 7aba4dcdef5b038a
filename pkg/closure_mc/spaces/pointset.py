from typing import Iterable, Iterator

import numpy as np

from closure_mc.exceptions import InvalidPointSetError


class PointSet:
    """
    Immutable set of point indices over a universe 0..universe-1

    Membership is a dense boolean indicator so that union, intersection and
    complement are single vectorized passes. Iteration is always ascending.
    """

    __slots__ = ("_mask", "_count")

    def __init__(self, mask: np.ndarray):
        mask = np.array(mask, dtype=bool, copy=True)
        if mask.ndim != 1:
            raise InvalidPointSetError("point set indicator must be one dimensional")
        mask.setflags(write=False)
        self._mask = mask
        self._count = None

    @classmethod
    def _wrap(cls, mask: np.ndarray) -> "PointSet":
        """Adopt a freshly computed indicator without copying it"""
        ps = cls.__new__(cls)
        mask.setflags(write=False)
        ps._mask = mask
        ps._count = None
        return ps

    @classmethod
    def empty(cls, universe: int) -> "PointSet":
        return cls._wrap(np.zeros(universe, dtype=bool))

    @classmethod
    def full(cls, universe: int) -> "PointSet":
        return cls._wrap(np.ones(universe, dtype=bool))

    @classmethod
    def from_indices(cls, universe: int, indices: Iterable[int]) -> "PointSet":
        if isinstance(indices, np.ndarray):
            idx = indices.astype(np.int64, copy=False).ravel()
        else:
            idx = np.fromiter((int(i) for i in indices), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= universe):
            bad = idx[(idx < 0) | (idx >= universe)]
            raise InvalidPointSetError(
                f"points {sorted(set(bad.tolist()))} are outside the space of {universe} points",
            )
        mask = np.zeros(universe, dtype=bool)
        mask[idx] = True
        return cls._wrap(mask)

    @property
    def universe(self) -> int:
        return self._mask.shape[0]

    @property
    def mask(self) -> np.ndarray:
        """Read-only boolean indicator"""
        return self._mask

    @property
    def nbytes(self) -> int:
        return self._mask.nbytes

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self._mask)

    def to_set(self) -> set[int]:
        return set(self.indices().tolist())

    def _check_same_universe(self, other: "PointSet"):
        if not isinstance(other, PointSet):
            raise TypeError(f"expected a PointSet, got {type(other).__name__}")
        if other.universe != self.universe:
            raise InvalidPointSetError(
                f"point sets over {self.universe} and {other.universe} points cannot be combined",
            )

    def __len__(self) -> int:
        if self._count is None:
            self._count = int(np.count_nonzero(self._mask))
        return self._count

    def __bool__(self) -> bool:
        return len(self) > 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices().tolist())

    def __contains__(self, x) -> bool:
        return 0 <= x < self.universe and bool(self._mask[x])

    def __or__(self, other: "PointSet") -> "PointSet":
        self._check_same_universe(other)
        return PointSet._wrap(self._mask | other._mask)

    def __and__(self, other: "PointSet") -> "PointSet":
        self._check_same_universe(other)
        return PointSet._wrap(self._mask & other._mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._check_same_universe(other)
        return PointSet._wrap(self._mask & ~other._mask)

    def complement(self) -> "PointSet":
        return PointSet._wrap(~self._mask)

    __invert__ = complement

    def issubset(self, other: "PointSet") -> bool:
        self._check_same_universe(other)
        return not np.any(self._mask & ~other._mask)

    def issuperset(self, other: "PointSet") -> bool:
        return other.issubset(self)

    def isdisjoint(self, other: "PointSet") -> bool:
        self._check_same_universe(other)
        return not np.any(self._mask & other._mask)

    __le__ = issubset
    __ge__ = issuperset

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.universe == other.universe and bool(
            np.array_equal(self._mask, other._mask),
        )

    def __hash__(self) -> int:
        return hash((self.universe, self._mask.tobytes()))

    def __repr__(self) -> str:
        members = self.indices()
        shown = ", ".join(str(i) for i in members[:16].tolist())
        if members.size > 16:
            shown += ", ..."
        return f"PointSet({{{shown}}} of {self.universe})"
