import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from scipy import sparse

from closure_mc.exceptions import InvalidPointSetError, InvalidSpaceError
from closure_mc.spaces import BoundaryKind, Direction, PointSet, QuasiDiscreteSpace

from .strategies import point_sets, spaces

axiom_settings = settings(
    max_examples=1000,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


@st.composite
def space_and_sets(draw, count: int = 2, max_points: int = 10):
    space = draw(spaces(max_points=max_points))
    sets = [draw(point_sets(space.point_count)) for _ in range(count)]
    return space, *sets


def test_relation_is_canonical():
    space = QuasiDiscreteSpace.from_edges(4, [0, 0, 2, 2, 3], [1, 1, 2, 0, 1])
    assert list(space.edges()) == [(0, 1), (2, 0), (3, 1)]
    assert space.edge_count == 3
    assert list(space.adjacent(1, Direction.Pre)) == [0, 3]
    assert list(space.point_labels) == [0, 1, 2, 3]
    assert repr(space) == "QuasiDiscreteSpace(points=4, edges=3)"

    with pytest.raises(InvalidSpaceError, match="square"):
        QuasiDiscreteSpace(sparse.csr_matrix((2, 3), dtype=bool))

    with pytest.raises(InvalidPointSetError, match="edge endpoints"):
        QuasiDiscreteSpace.from_edges(2, [0], [2])

    with pytest.raises(InvalidSpaceError, match="3 point labels given for 2 points"):
        QuasiDiscreteSpace.from_edges(2, [0], [1], point_labels=["a", "b", "c"])


def test_closure_on_ten_point_graph(ten_point_graph):
    space = ten_point_graph.space
    assert space.closure(space.empty()) == space.empty()
    assert space.closure(space.full()) == space.full()
    assert list(space.closure(space.points([3, 4]))) == [2, 3, 4, 5, 6, 8, 9]

    with pytest.raises(InvalidPointSetError, match="point set over 3 points"):
        space.closure(PointSet.full(3))


def test_interior_and_boundary(ten_point_graph):
    space = ten_point_graph.space
    assert space.interior(space.full()) == space.full()
    assert list(space.interior(space.points([3, 5, 6, 7]))) == [6, 7]

    for kind in BoundaryKind:
        assert space.boundary(space.empty(), kind) == space.empty()

    a = space.points([0, 1, 2, 3, 4, 8, 9])
    assert list(space.boundary(a, BoundaryKind.Outer)) == [5, 6]
    assert list(space.boundary(a, BoundaryKind.Inner)) == [3, 4, 8]
    assert list(space.boundary(a)) == [3, 4, 5, 6, 8]


def test_adjacency_queries(ten_point_graph):
    space = ten_point_graph.space
    assert list(space.adjacent(3, Direction.Post)) == [2, 5, 6]
    assert list(space.minimal_neighbourhood(9)) == [4, 8, 9]
    assert space.is_symmetric()
    for x in range(space.point_count):
        assert space.adjacent(x, Direction.Pre) == space.adjacent(x, Direction.Post)

    isolated = QuasiDiscreteSpace.from_edges(3, [0], [1])
    assert not isolated.adjacent(2, Direction.Pre)
    assert list(isolated.minimal_neighbourhood(2)) == [2]
    assert not isolated.is_symmetric()

    with pytest.raises(InvalidPointSetError, match="point 10 is outside the space of 10 points"):
        space.adjacent(10)


def test_subspace(ten_point_graph):
    space = ten_point_graph.space
    sub = space.subspace(space.points([3, 4, 5]))
    assert sub.point_count == 3
    assert list(sub.point_labels) == [3, 4, 5]
    assert list(sub.edges()) == [(0, 2), (1, 2), (2, 0), (2, 1)]

    assert space.subspace(space.full()).has_same_relation(space)
    assert space.subspace(space.empty()).point_count == 0


def test_coproduct(ten_point_graph):
    space = ten_point_graph.space
    double = space.coproduct(space)
    assert double.point_count == 20
    assert double.edge_count == 2 * space.edge_count == 60

    empty = QuasiDiscreteSpace.from_edges(0, [], [])
    assert empty.coproduct(space).has_same_relation(space)

    a = double.points([3, 4, 15])
    assert list(double.closure(a)) == [2, 3, 4, 5, 6, 8, 9, 13, 14, 15, 16, 17, 18]


def test_is_topological():
    n = 5
    complete = QuasiDiscreteSpace(sparse.csr_matrix(np.ones((n, n), dtype=bool)))
    assert complete.is_topological()

    edgeless = QuasiDiscreteSpace.from_edges(4, [], [])
    assert edgeless.is_topological()

    path = QuasiDiscreteSpace.from_edges(3, [0, 1], [1, 2], symmetric=True)
    assert not path.is_topological()

    # a transitive order is topological
    order = QuasiDiscreteSpace.from_edges(3, [0, 0, 1], [1, 2, 2])
    assert order.is_topological()


@axiom_settings
@given(space_and_sets(count=2))
def test_closure_axioms(data):
    space, a, b = data
    assert space.closure(space.empty()) == space.empty()
    assert a <= space.closure(a)
    assert space.closure(a | b) == space.closure(a) | space.closure(b)


@axiom_settings
@given(space_and_sets(count=1))
def test_boundary_equations(data):
    space, a = data
    full = space.boundary(a, BoundaryKind.Full)
    inner = space.boundary(a, BoundaryKind.Inner)
    outer = space.boundary(a, BoundaryKind.Outer)

    assert full == outer | inner
    assert outer.isdisjoint(inner)
    assert full == space.boundary(~a, BoundaryKind.Full)
    assert outer == space.boundary(~a, BoundaryKind.Inner)
    assert full & ~a == outer
    assert full & a == inner
    assert full == space.closure(a) & space.closure(~a)


@axiom_settings
@given(space_and_sets(count=1))
def test_adjacency_formulas_match_closure_compositions(data):
    space, a = data
    interior = space.interior(a)
    assert interior == ~space.closure(~a)

    by_predecessors = [x for x in a if space.adjacent(x, Direction.Pre) <= a]
    assert list(interior) == by_predecessors

    inner = [x for x in a if not space.adjacent(x, Direction.Pre) <= a]
    assert list(space.boundary(a, BoundaryKind.Inner)) == inner

    outer = [x for x in ~a if not space.adjacent(x, Direction.Pre).isdisjoint(a)]
    assert list(space.boundary(a, BoundaryKind.Outer)) == outer


@axiom_settings
@given(space_and_sets(count=2))
def test_monotonicity(data):
    space, a, b = data
    smaller = a & b
    assert space.closure(smaller) <= space.closure(a)
    assert space.interior(smaller) <= space.interior(a)


@axiom_settings
@given(space_and_sets(count=1))
def test_quasi_discreteness(data):
    space, a = data
    pointwise = space.empty()
    for x in a:
        pointwise = pointwise | space.closure(space.points([x]))
    assert space.closure(a) == pointwise

    for x in range(space.point_count):
        assert x in space.interior(space.minimal_neighbourhood(x))


@axiom_settings
@given(space_and_sets(count=3))
def test_subspace_closure(data):
    space, y, a, b = data
    sub = space.subspace(y)
    original = np.asarray(sub.point_labels, dtype=np.int64)

    def lift(points: PointSet) -> PointSet:
        return space.points(original[points.indices()])

    def local(points: PointSet) -> PointSet:
        return sub.points(np.flatnonzero(points.mask[original]))

    a_local, b_local = local(a & y), local(b & y)
    assert sub.closure(sub.empty()) == sub.empty()
    assert a_local <= sub.closure(a_local)
    assert sub.closure(a_local | b_local) == sub.closure(a_local) | sub.closure(b_local)
    assert lift(sub.closure(a_local)) == space.closure(a & y) & y


@axiom_settings
@given(space_and_sets(count=1))
def test_self_loops_are_ignored(data):
    space, a = data
    n = space.point_count
    loops = sparse.identity(n, dtype=np.int8, format="csr")
    relation = sparse.csr_matrix(space.forward.astype(np.int8) + loops)
    assert relation.diagonal().all()

    looped = QuasiDiscreteSpace(relation)
    assert looped.edge_count == space.edge_count
    assert looped.has_same_relation(space)

    # closure read off the reflexive relation directly
    direct = np.asarray(relation.T @ a.mask.astype(np.int64)).ravel() > 0
    assert looped.closure(a) == PointSet(direct) == space.closure(a)
    assert looped.interior(a) == space.interior(a)


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(spaces(max_points=8))
def test_topological_iff_idempotent(space):
    n = space.point_count
    idempotent = True
    for members in itertools.product([False, True], repeat=n):
        a = PointSet(np.array(members, dtype=bool))
        closed = space.closure(a)
        if space.closure(closed) != closed:
            idempotent = False
            break
    assert space.is_topological() == idempotent
