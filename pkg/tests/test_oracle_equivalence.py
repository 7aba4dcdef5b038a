"""Checkers against the brute-force oracle on random small models"""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from closure_mc.checker import check_group, sat, sat_collective
from closure_mc.logic import parse_individual
from closure_mc.logic.ast import Group
from closure_mc.oracle import oracle_sat_collective, oracle_sat_set

from .strategies import collective_formulas, individual_formulas, models, point_sets

equivalence_settings = settings(
    max_examples=500,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)

DERIVED_OPERATORS = (
    "I a",
    "E a",
    "F a",
    "boundary a",
    "iboundary a",
    "cboundary a",
    "a U b",
    "a T b",
    "a Pbar b",
    "(a S b) U (c P a)",
)


@equivalence_settings
@given(models(max_points=10), individual_formulas(depth=4))
def test_individual_checker_matches_oracle(model, formula):
    assert sat(model, formula) == oracle_sat_set(model, formula)


@equivalence_settings
@given(models(max_points=10), collective_formulas(depth=3, individual_depth=2), st.data())
def test_collective_checker_matches_oracle(model, formula, data):
    a = data.draw(point_sets(model.point_count))
    assert sat_collective(model, a, formula) == oracle_sat_collective(model, a, formula)


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(models(max_points=10), st.sampled_from(DERIVED_OPERATORS))
def test_derived_operators_match_oracle(model, text):
    formula = parse_individual(text)
    assert sat(model, formula) == oracle_sat_set(model, formula)


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(
    models(max_points=10),
    individual_formulas(depth=3),
    collective_formulas(depth=2, individual_depth=2),
    st.data(),
)
def test_self_loops_change_nothing(model, formula, collective, data):
    # the oracle keeps a loop on every point, the checker has none
    assert sat(model, formula) == oracle_sat_set(model, formula, reflexive=True)

    a = data.draw(point_sets(model.point_count))
    assert sat_collective(model, a, collective) == oracle_sat_collective(model, a, collective, reflexive=True)


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(models(max_points=10), individual_formulas(depth=2), st.data())
def test_group_search_matches_oracle_from_every_start(model, formula, data):
    b = sat(model, formula)
    if not b:
        return
    chosen = data.draw(st.lists(st.sampled_from(b.indices().tolist()), min_size=1, unique=True))
    a = model.space.points(chosen)

    expected = oracle_sat_collective(model, a, Group(formula))
    for x in a:
        assert check_group(model, a, b, start=x) == expected
