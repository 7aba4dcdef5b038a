import threading
import uuid
from collections.abc import Iterable, Mapping
from types import MappingProxyType
from typing import Union

from closure_mc.exceptions import InvalidPointSetError
from closure_mc.logger import logger
from closure_mc.spaces.pointset import PointSet
from closure_mc.spaces.space import QuasiDiscreteSpace


class ClosureModel:
    """A quasi-discrete closure space together with a valuation of atomic propositions"""

    def __init__(
        self,
        space: QuasiDiscreteSpace,
        valuation: Mapping[str, Union[PointSet, Iterable[int]]],
    ):
        self.space = space
        checked = {}
        for name, points in valuation.items():
            if not isinstance(points, PointSet):
                points = PointSet.from_indices(space.point_count, points)
            elif points.universe != space.point_count:
                raise InvalidPointSetError(
                    f"proposition {name!r} is defined over {points.universe} points, "
                    f"the space has {space.point_count}",
                )
            checked[name] = points
        self.valuation = MappingProxyType(checked)
        self._unknown_atoms: set[str] = set()
        self._lock = threading.Lock()
        # identifies the model in caches shared between checkers
        self.key = uuid.uuid4().hex

    @property
    def point_count(self) -> int:
        return self.space.point_count

    @property
    def propositions(self) -> list[str]:
        return sorted(self.valuation)

    def atom(self, name: str) -> PointSet:
        """Points satisfying `name`; unknown propositions hold nowhere"""
        points = self.valuation.get(name)
        if points is None:
            with self._lock:
                first = name not in self._unknown_atoms
                self._unknown_atoms.add(name)
            if first:
                logger.warning(f"atomic proposition {name!r} is not defined in the model, it holds nowhere")
            return PointSet.empty(self.point_count)
        return points

    def with_valuation(self, extra: Mapping[str, Union[PointSet, Iterable[int]]]) -> "ClosureModel":
        """Same space, valuation extended (and overridden) by `extra`"""
        return ClosureModel(self.space, {**self.valuation, **extra})

    def __repr__(self) -> str:
        return f"{type(self).__name__}(points={self.point_count}, propositions={self.propositions})"
