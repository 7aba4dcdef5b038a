"""
Brute-force satisfaction for small models

Every connective is decided straight from its path or subset based meaning,
on integer bitmasks, without any of the checkers' machinery. Surrounded
enumerates the candidate regions, propagation searches walks, and group
enumerates the candidate connected supersets. Models are limited to
ORACLE_LIMIT points.
"""

from collections import deque
from typing import Iterator

from closure_mc.exceptions import SizeLimitError
from closure_mc.logic.ast import (
    And,
    Atom,
    CollectiveAnd,
    CollectiveFormula,
    CollectiveNot,
    CollectiveTop,
    Group,
    IndividualFormula,
    Near,
    Not,
    Propagation,
    Share,
    Surrounded,
    Top,
)
from closure_mc.spaces.model import ClosureModel
from closure_mc.spaces.pointset import PointSet

ORACLE_LIMIT = 12


def _bits(mask: int) -> Iterator[int]:
    x = 0
    while mask:
        if mask & 1:
            yield x
        mask >>= 1
        x += 1


def _submasks(mask: int) -> Iterator[int]:
    """Every subset of mask, mask itself first and 0 last"""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class _Oracle:
    def __init__(self, model: ClosureModel, reflexive: bool = False):
        n = model.point_count
        if n > ORACLE_LIMIT:
            raise SizeLimitError(f"the oracle handles up to {ORACLE_LIMIT} points, the model has {n}")

        self.model = model
        self.n = n
        self.full = (1 << n) - 1
        # walks may stay on a point, so successors always include the point itself
        self.steps = [1 << x for x in range(n)]
        self.post = [0] * n
        self.pre = [0] * n
        for x, y in model.space.edges():
            self.post[x] |= 1 << y
            self.pre[y] |= 1 << x
            self.steps[x] |= 1 << y
        if reflexive:
            for x in range(n):
                self.post[x] |= 1 << x
                self.pre[x] |= 1 << x
        self.memo: dict = {}

    def to_mask(self, points: PointSet) -> int:
        mask = 0
        for x in points:
            mask |= 1 << x
        return mask

    def closure(self, mask: int) -> int:
        result = mask
        for x in _bits(mask):
            result |= self.post[x]
        return result

    def sat(self, formula: IndividualFormula) -> int:
        if formula in self.memo:
            return self.memo[formula]

        match formula:
            case Atom(name):
                points = self.model.valuation.get(name)
                result = 0 if points is None else self.to_mask(points)
            case Top():
                result = self.full
            case Not(operand):
                result = self.full & ~self.sat(operand)
            case And(left, right):
                result = self.sat(left) & self.sat(right)
            case Near(operand):
                result = self.closure(self.sat(operand))
            case Surrounded(left, right):
                result = self.surrounded(self.sat(left), self.sat(right))
            case Propagation(left, right):
                result = 0
                for x in self.walk_lengths(self.sat(left), self.sat(right)):
                    result |= 1 << x
            case _:
                raise TypeError(f"not an individual formula: {formula!r}")

        self.memo[formula] = result
        return result

    def surrounded(self, inner: int, outer: int) -> int:
        """Union of the regions of inner whose closure boundary lies in outer"""
        result = 0
        for region in _submasks(inner):
            if region & ~result == 0:
                continue
            boundary = self.closure(region) & ~region
            if boundary & ~outer == 0:
                result |= region
        return result

    def walk_lengths(self, start: int, through: int) -> dict[int, int]:
        """
        Shortest walk length to every point of `through` reachable from `start`

        The walk starts at a point of `start`, every later point satisfies
        `through`. States are (point, started) pairs.
        """
        lengths: dict[int, int] = {}
        seen = set()
        queue = deque()
        for y in _bits(start):
            seen.add((y, False))
            queue.append((y, False, 0))

        while queue:
            x, started, length = queue.popleft()
            if (through >> x) & 1 and x not in lengths:
                lengths[x] = length
            if started and not (through >> x) & 1:
                continue
            for z in _bits(self.steps[x]):
                if (z, True) not in seen:
                    seen.add((z, True))
                    queue.append((z, True, length + 1))
        return lengths

    def reached(self, start: int, mask: int, relation: list[int]) -> int:
        reached = start
        frontier = start
        while frontier:
            following = 0
            for y in _bits(frontier):
                following |= relation[y]
            following &= mask & ~reached
            reached |= following
            frontier = following
        return reached

    def is_path_connected(self, mask: int) -> bool:
        """Every point reaches the lowest one and is reached from it, within mask"""
        if mask == 0:
            return True
        lowest = mask & -mask
        return self.reached(lowest, mask, self.post) == mask and self.reached(lowest, mask, self.pre) == mask

    def sat_collective(self, points: int, formula: CollectiveFormula) -> bool:
        match formula:
            case CollectiveTop():
                return True
            case CollectiveNot(operand):
                return not self.sat_collective(points, operand)
            case CollectiveAnd(left, right):
                return self.sat_collective(points, left) and self.sat_collective(points, right)
            case Share(individual, collective):
                return self.sat_collective(points & self.sat(individual), collective)
            case Group(individual):
                allowed = self.sat(individual)
                if points & ~allowed:
                    return False
                return any(
                    self.is_path_connected(points | extra) for extra in _submasks(allowed & ~points)
                )
            case _:
                raise TypeError(f"not a collective formula: {formula!r}")


def oracle_sat_individual(
    model: ClosureModel,
    formula: IndividualFormula,
    x: int,
    reflexive: bool = False,
) -> bool:
    """
    Whether point x satisfies an individual formula, decided by exhaustive search

    With `reflexive`, every point is also related to itself, which must not
    change any answer.
    """
    model.space._check_point(x)
    return bool((_Oracle(model, reflexive).sat(formula) >> x) & 1)


def oracle_sat_set(model: ClosureModel, formula: IndividualFormula, reflexive: bool = False) -> PointSet:
    mask = _Oracle(model, reflexive).sat(formula)
    return PointSet.from_indices(model.point_count, _bits(mask))


def oracle_sat_collective(
    model: ClosureModel,
    points: PointSet,
    formula: CollectiveFormula,
    reflexive: bool = False,
) -> bool:
    """Whether a point set satisfies a collective formula, decided by exhaustive search"""
    model.space._check(points)
    oracle = _Oracle(model, reflexive)
    return oracle.sat_collective(oracle.to_mask(points), formula)


def oracle_propagation_lengths(
    model: ClosureModel,
    source: IndividualFormula,
    through: IndividualFormula,
) -> dict[int, int]:
    """Shortest witness walk length of every point satisfying `source P through`"""
    oracle = _Oracle(model)
    return oracle.walk_lengths(oracle.sat(source), oracle.sat(through))
