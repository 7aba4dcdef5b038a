import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings

from closure_mc.checker import WorklistStats, check_propagation
from closure_mc.exceptions import SizeLimitError
from closure_mc.logic import parse_collective, parse_individual
from closure_mc.logic.ast import Atom, Group, Top
from closure_mc.oracle import (
    ORACLE_LIMIT,
    oracle_propagation_lengths,
    oracle_sat_collective,
    oracle_sat_individual,
    oracle_sat_set,
)
from closure_mc.spaces import ClosureModel, PointSet, QuasiDiscreteSpace

from .strategies import models


def test_oracle_on_ten_point_graph(ten_point_graph):
    surrounded = parse_individual("yellow S red")
    assert oracle_sat_individual(ten_point_graph, surrounded, 0)
    assert not oracle_sat_individual(ten_point_graph, surrounded, 8)
    assert not oracle_sat_individual(ten_point_graph, parse_individual("red P yellow"), 7)
    assert oracle_sat_individual(ten_point_graph, Top(), 7)

    assert list(oracle_sat_set(ten_point_graph, surrounded)) == [0, 1, 2]
    assert list(oracle_sat_set(ten_point_graph, parse_individual("red P yellow"))) == [0, 1, 2, 8, 9]


def test_oracle_collective(ten_point_graph, partition_left, partition_right):
    space = ten_point_graph.space
    assert oracle_sat_collective(ten_point_graph, space.empty(), Group(parse_individual("FF")))
    assert not oracle_sat_collective(ten_point_graph, space.points([0, 8]), Group(Atom("yellow")))
    assert oracle_sat_collective(ten_point_graph, space.points([0, 8]), parse_collective("G N yellow"))

    part = parse_collective("red PART blue")
    assert oracle_sat_collective(partition_left, partition_left.space.full(), part)
    assert not oracle_sat_collective(partition_right, partition_right.space.full(), part)


def test_propagation_lengths(ten_point_graph):
    lengths = oracle_propagation_lengths(ten_point_graph, Atom("red"), Atom("yellow"))
    assert lengths == {2: 1, 8: 1, 9: 1, 0: 2, 1: 2}

    # a source point satisfying the target is reached by a one point walk
    lengths = oracle_propagation_lengths(ten_point_graph, Atom("yellow"), Atom("yellow"))
    assert set(lengths) == {0, 1, 2, 8, 9}
    assert set(lengths.values()) == {0}


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(models(max_points=10))
def test_propagation_rounds_match_walk_lengths(model):
    stats = WorklistStats()
    result = check_propagation(model, model.atom("a"), model.atom("b"), stats)
    lengths = oracle_propagation_lengths(model, Atom("a"), Atom("b"))

    assert result.to_set() == set(lengths)
    for step, frontier in enumerate(stats.frontiers):
        for x in frontier:
            assert max(lengths[x], 1) - 1 == step


def test_reflexive_relation_changes_nothing(ten_point_graph):
    for text in ("yellow S red", "red P yellow", "N red", "E (yellow | red)", "yellow U red"):
        formula = parse_individual(text)
        assert oracle_sat_set(ten_point_graph, formula, reflexive=True) == oracle_sat_set(ten_point_graph, formula)

    group = parse_collective("G (yellow | red)")
    a = ten_point_graph.space.points([0, 9])
    assert oracle_sat_collective(ten_point_graph, a, group, reflexive=True) == oracle_sat_collective(ten_point_graph, a, group)


def test_oracle_size_limit(two_rings_image):
    n = ORACLE_LIMIT + 1
    space = QuasiDiscreteSpace.from_edges(n, np.arange(n - 1), np.arange(1, n))
    model = ClosureModel(space, {})

    with pytest.raises(SizeLimitError, match=f"up to {ORACLE_LIMIT} points"):
        oracle_sat_set(model, Top())

    with pytest.raises(SizeLimitError):
        oracle_sat_collective(two_rings_image, two_rings_image.space.empty(), Group(Top()))


def test_oracle_rejects_foreign_points(ten_point_graph):
    with pytest.raises(ValueError):
        oracle_sat_individual(ten_point_graph, Top(), 10)

    with pytest.raises(ValueError):
        oracle_sat_collective(ten_point_graph, PointSet.full(3), Group(Top()))
