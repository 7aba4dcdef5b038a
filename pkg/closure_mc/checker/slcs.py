import logging
import time
from dataclasses import dataclass, field
from typing import Optional

import cachey
import numpy as np

from closure_mc.logger import logger
from closure_mc.logic.ast import (
    And,
    Atom,
    IndividualFormula,
    Near,
    Not,
    Propagation,
    Surrounded,
    Top,
    intern_formula,
)
from closure_mc.spaces.model import ClosureModel
from closure_mc.spaces.pointset import PointSet


@dataclass
class WorklistStats:
    """Work done by one surrounded or propagation check"""

    iterations: int = 0
    points_enqueued: int = 0
    edges_traversed: int = 0
    frontiers: list[PointSet] = field(default_factory=list)

    def record(self, frontier: np.ndarray, edges: int):
        self.iterations += 1
        self.points_enqueued += int(np.count_nonzero(frontier))
        self.edges_traversed += edges
        self.frontiers.append(PointSet(frontier))


def _trace(kind: str, step: int, frontier: np.ndarray):
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"{kind} frontier {step}: {np.flatnonzero(frontier).tolist()}")


def check_surrounded(
    model: ClosureModel,
    v: PointSet,
    q: PointSet,
    stats: Optional[WorklistStats] = None,
) -> PointSet:
    """
    Points of v from which no path leaves v without first hitting q

    Bad points are eliminated backwards from the closure boundary of v | q.
    Every eliminated point not in q joins the next frontier, so each point is
    a frontier member at most once and each edge is followed at most once.
    """
    space = model.space
    space._check(v)
    space._check(q)

    start = time.time()
    remaining = v.mask.copy()
    barrier = q.mask

    union = PointSet._wrap(remaining | barrier)
    frontier = (space.closure(union) - union).mask.copy()

    step = 0
    while frontier.any():
        _trace("surrounded", step, frontier)
        predecessors = space.pre_of(np.flatnonzero(frontier))
        if stats is not None:
            stats.record(frontier, predecessors.size)

        eliminated = np.zeros_like(remaining)
        eliminated[predecessors] = True
        eliminated &= remaining
        remaining &= ~eliminated

        frontier = eliminated & ~barrier
        step += 1

    _trace("surrounded", step, frontier)
    if stats is not None:
        stats.frontiers.append(PointSet(frontier))

    logger.debug(f"surrounded check ({step} rounds) time: {time.time() - start}")
    return PointSet._wrap(remaining)


def check_propagation(
    model: ClosureModel,
    v: PointSet,
    q: PointSet,
    stats: Optional[WorklistStats] = None,
) -> PointSet:
    """
    Points of q reached from v by a path whose later points all satisfy q

    Flooding starts from the points of q in the closure of v, so points of v
    that are themselves in q count as reached by a one point path.
    """
    space = model.space
    space._check(v)
    space._check(q)

    start = time.time()
    unreached = q.mask.copy()
    frontier = space.closure(v).mask & unreached
    reached = frontier.copy()
    unreached &= ~frontier

    step = 0
    while frontier.any():
        _trace("propagation", step, frontier)
        successors = space.post_of(np.flatnonzero(frontier))
        if stats is not None:
            stats.record(frontier, successors.size)

        following = np.zeros_like(unreached)
        following[successors] = True
        following &= unreached
        unreached &= ~following
        reached |= following

        frontier = following
        step += 1

    _trace("propagation", step, frontier)
    if stats is not None:
        stats.frontiers.append(PointSet(frontier))

    logger.debug(f"propagation check ({step} rounds) time: {time.time() - start}")
    return PointSet._wrap(reached)


class SlcsChecker:
    """
    Global model checker for individual formulas

    Satisfaction sets are memoized per call by formula structure. A cachey
    cache, when given, keeps them across calls so the commands of one run
    share the subformulas they have in common.
    """

    model: ClosureModel
    cache: Optional[cachey.Cache]

    def __init__(self, model: ClosureModel, cache: Optional[cachey.Cache] = None):
        self.model = model
        self.cache = cache

    def sat(self, formula: IndividualFormula) -> PointSet:
        start = time.time()
        memo = {}
        result = self._sat(intern_formula(formula), memo)
        logger.debug(
            f"SLCS sat ({len(memo)} subformulas, {len(result)} points) time: {time.time() - start}",
        )
        return result

    def _cached(self, formula: IndividualFormula) -> Optional[PointSet]:
        if self.cache is None:
            return None
        return self.cache.get((self.model.key, formula))

    def _store(self, formula: IndividualFormula, result: PointSet, cost: float):
        if self.cache is not None:
            self.cache.put((self.model.key, formula), result, cost=cost, nbytes=result.nbytes)

    def _sat(self, formula: IndividualFormula, memo: dict) -> PointSet:
        found = memo.get(formula)
        if found is not None:
            return found

        found = self._cached(formula)
        if found is not None:
            memo[formula] = found
            return found

        start = time.time()
        space = self.model.space
        match formula:
            case Atom(name):
                result = self.model.atom(name)
            case Top():
                result = space.full()
            case Not(operand):
                result = ~self._sat(operand, memo)
            case And(left, right):
                result = self._sat(left, memo) & self._sat(right, memo)
            case Near(operand):
                result = space.closure(self._sat(operand, memo))
            case Surrounded(left, right):
                result = check_surrounded(self.model, self._sat(left, memo), self._sat(right, memo))
            case Propagation(left, right):
                result = check_propagation(self.model, self._sat(left, memo), self._sat(right, memo))
            case _:
                raise TypeError(f"not an individual formula: {formula!r}")

        memo[formula] = result
        if not isinstance(formula, (Atom, Top)):
            self._store(formula, result, time.time() - start)
        return result


def sat(
    model: ClosureModel,
    formula: IndividualFormula,
    cache: Optional[cachey.Cache] = None,
) -> PointSet:
    """Set of the points of the model satisfying an individual formula"""
    return SlcsChecker(model, cache=cache).sat(formula)
