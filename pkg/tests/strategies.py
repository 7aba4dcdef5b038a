"""Hypothesis strategies shared by the randomized suites"""

import numpy as np
from hypothesis import strategies as st
from hypothesis.strategies import DrawFn, composite

from closure_mc.logic.ast import (
    And,
    Atom,
    CollectiveAnd,
    CollectiveNot,
    CollectiveTop,
    Group,
    Near,
    Not,
    Propagation,
    Share,
    Surrounded,
    Top,
)
from closure_mc.spaces import ClosureModel, PointSet, QuasiDiscreteSpace

ATOMS = ("a", "b", "c")
DENSITIES = (0.1, 0.3, 0.6)


def _relation(rng: np.random.Generator, n: int, density: float, symmetric: bool) -> np.ndarray:
    relation = rng.random((n, n)) < density
    if symmetric:
        relation = relation | relation.T
    np.fill_diagonal(relation, False)
    return relation


@composite
def spaces(draw: DrawFn, min_points: int = 1, max_points: int = 10) -> QuasiDiscreteSpace:
    n = draw(st.integers(min_points, max_points))
    density = draw(st.sampled_from(DENSITIES))
    symmetric = draw(st.booleans())
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    sources, targets = np.nonzero(_relation(rng, n, density, symmetric))
    return QuasiDiscreteSpace.from_edges(n, sources, targets)


@composite
def models(draw: DrawFn, min_points: int = 1, max_points: int = 10) -> ClosureModel:
    space = draw(spaces(min_points=min_points, max_points=max_points))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    valuation = {name: PointSet(rng.random(space.point_count) < 0.5) for name in ATOMS}
    return ClosureModel(space, valuation)


@composite
def point_sets(draw: DrawFn, universe: int) -> PointSet:
    members = draw(st.lists(st.booleans(), min_size=universe, max_size=universe))
    return PointSet(np.array(members, dtype=bool))


def individual_formulas(depth: int = 4):
    leaves = st.one_of(st.sampled_from(ATOMS).map(Atom), st.just(Top()))
    if depth == 0:
        return leaves

    sub = individual_formulas(depth - 1)
    return st.one_of(
        leaves,
        sub.map(Not),
        sub.map(Near),
        st.builds(And, sub, sub),
        st.builds(Surrounded, sub, sub),
        st.builds(Propagation, sub, sub),
    )


def collective_formulas(depth: int = 3, individual_depth: int = 3):
    individual = individual_formulas(individual_depth)
    leaves = st.one_of(st.just(CollectiveTop()), individual.map(Group))
    if depth == 0:
        return leaves

    sub = collective_formulas(depth - 1, individual_depth)
    return st.one_of(
        leaves,
        sub.map(CollectiveNot),
        st.builds(CollectiveAnd, sub, sub),
        st.builds(Share, individual, sub),
    )
