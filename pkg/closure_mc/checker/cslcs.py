import time
from dataclasses import dataclass, field
from typing import Optional

import cachey

from closure_mc.checker.slcs import SlcsChecker
from closure_mc.exceptions import InvalidPointSetError
from closure_mc.logger import logger
from closure_mc.logic.ast import (
    CollectiveAnd,
    CollectiveFormula,
    CollectiveNot,
    CollectiveTop,
    Group,
    Share,
    intern_formula,
)
from closure_mc.spaces.model import ClosureModel
from closure_mc.spaces.pointset import PointSet


@dataclass
class GroupStats:
    """Work done by one group search"""

    pushes: int = 0
    edges_traversed: int = 0
    component: Optional[PointSet] = None


@dataclass
class TarjanState:
    """
    Book-keeping of one group search

    `lowlink[x]` is -1 until x is visited. `done[x]` is set once the
    component of x has been popped; such points no longer lower lowlinks.
    """

    point_count: int
    counter: int = 0
    stack: list[int] = field(default_factory=list)
    lowlink: list[int] = field(default_factory=list)
    done: list[bool] = field(default_factory=list)
    result: Optional[bool] = None

    def __post_init__(self):
        if not self.lowlink:
            self.lowlink = [-1] * self.point_count
        if not self.done:
            self.done = [False] * self.point_count

    def push(self, x: int):
        self.stack.append(x)
        self.lowlink[x] = self.counter
        self.counter += 1

    def pop_until(self, x: int, in_a: list[bool], component: Optional[list[int]] = None) -> int:
        """Pop the stack down to and including x, returning how many popped points are in A"""
        hits = 0
        while True:
            y = self.stack.pop()
            self.done[y] = True
            if in_a[y]:
                hits += 1
            if component is not None:
                component.append(y)
            if y == x:
                return hits


def check_group(
    model: ClosureModel,
    a: PointSet,
    b: PointSet,
    start: Optional[int] = None,
    stats: Optional[GroupStats] = None,
) -> bool:
    """
    Whether all of a lies in one strongly connected component of the subgraph induced by b

    Depth-first search from a point of a, following successors inside b only.
    The first completed component meeting a decides: true iff it contains the
    whole of a. Requires a non-empty a included in b.
    """
    space = model.space
    space._check(a)
    space._check(b)
    if not a:
        raise InvalidPointSetError("group search needs a non-empty point set")
    if not a.issubset(b):
        raise InvalidPointSetError("group search needs a point set included in the group formula's points")
    if start is None:
        start = int(a.indices()[0])
    elif start not in a:
        raise InvalidPointSetError(f"start point {start} is not in the point set")

    began = time.time()
    indptr, indices = space.forward_lists
    in_a = a.mask.tolist()
    in_b = b.mask.tolist()
    a_size = len(a)
    component = [] if stats is not None else None

    state = TarjanState(space.point_count)
    lowlink = state.lowlink
    done = state.done

    state.push(start)
    pushes, edges = 1, 0
    # frame: [point, next edge position, is root]
    frames = [[start, indptr[start], True]]

    while frames:
        frame = frames[-1]
        x, position = frame[0], frame[1]
        end = indptr[x + 1]

        descended = False
        while position < end:
            y = indices[position]
            position += 1
            if not in_b[y]:
                continue
            edges += 1
            if lowlink[y] == -1:
                frame[1] = position
                state.push(y)
                pushes += 1
                frames.append([y, indptr[y], True])
                descended = True
                break
            if not done[y] and lowlink[x] > lowlink[y]:
                lowlink[x] = lowlink[y]
                frame[2] = False
        if descended:
            continue

        frames.pop()
        if frame[2]:
            if component is not None:
                component.clear()
            hits = state.pop_until(x, in_a, component)
            if hits:
                state.result = hits == a_size
                break

        if frames:
            parent = frames[-1]
            if lowlink[parent[0]] > lowlink[x] and not done[x]:
                lowlink[parent[0]] = lowlink[x]
                parent[2] = False

    if stats is not None:
        stats.pushes += pushes
        stats.edges_traversed += edges
        if state.result is not None:
            stats.component = space.points(component)

    logger.debug(f"group search ({pushes} points, answer {state.result}) time: {time.time() - began}")
    # the component of the start point always meets a
    return bool(state.result)


class CslcsChecker:
    """Local model checker for collective formulas"""

    def __init__(
        self,
        model: ClosureModel,
        cache: Optional[cachey.Cache] = None,
        individual: Optional[SlcsChecker] = None,
    ):
        self.model = model
        self.individual = individual or SlcsChecker(model, cache=cache)

    def sat_collective(self, a: PointSet, formula: CollectiveFormula) -> bool:
        self.model.space._check(a)
        return self._sat_collective(a, intern_formula(formula), {})

    def _sat_collective(self, a: PointSet, formula: CollectiveFormula, memo: dict) -> bool:
        key = (formula, a.mask.tobytes())
        found = memo.get(key)
        if found is not None:
            return found

        match formula:
            case CollectiveTop():
                result = True
            case CollectiveNot(operand):
                result = not self._sat_collective(a, operand, memo)
            case CollectiveAnd(left, right):
                result = self._sat_collective(a, left, memo) and self._sat_collective(a, right, memo)
            case Share(individual, collective):
                result = self._sat_collective(a & self.individual.sat(individual), collective, memo)
            case Group(individual):
                if not a:
                    result = True
                else:
                    b = self.individual.sat(individual)
                    result = a.issubset(b) and check_group(self.model, a, b)
            case _:
                raise TypeError(f"not a collective formula: {formula!r}")

        memo[key] = result
        return result


def sat_collective(
    model: ClosureModel,
    a: PointSet,
    formula: CollectiveFormula,
    checker: Optional[CslcsChecker] = None,
) -> bool:
    """Whether the point set a satisfies a collective formula"""
    checker = checker or CslcsChecker(model)
    return checker.sat_collective(a, formula)
