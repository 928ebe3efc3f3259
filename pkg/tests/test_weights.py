"""Census weights, the edge and component laws, and the existence solver."""

import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from heaplab import (
    RefusedError,
    WeightFunction,
    build_poset,
    ColorGraph,
    check_minuscule_conditions,
    compute_psi,
    construct_weight,
    eigenvalue_set,
    enumerate_splits,
    is_component_weight,
    is_edge_weight,
    mu_weights,
    solve_edge_weight,
    tabulate,
    uniqueness_probe,
)
from heaplab.classify import instance_generator
from heaplab.periodic import ball
from heaplab.weights import (
    format_value,
    min_colors,
    mu_prime_weights,
    satisfies_max_rule,
    satisfies_min_rule,
)
from oracles import finite_posets, frac_values, mu, prop_holds


def test_fig2_mu_at_bottom(fig2):
    L = enumerate_splits(fig2)
    m = mu_weights(fig2)
    assert {a: m.value(a, 0) for a in fig2.graph.colors} == \
        {"a": -1, "b": 0, "c": 0, "d": 2, "g": -1}
    assert eigenvalue_set(m, L) == {-1, 0, 1, 2}
    assert compute_psi(fig2, "d", 0) == 3


def test_fig2_minuscule_conditions(fig2):
    L = enumerate_splits(fig2)
    m = tabulate(mu_weights(fig2), L)
    assert check_minuscule_conditions(m, L, "upper").holds
    low = check_minuscule_conditions(m, L, "lower")
    assert not low.holds and low.witness["color"] == "d"
    assert not check_minuscule_conditions(m, L, "full").holds


def test_fig1_mu_on_ball(fig1):
    B = list(ball(fig1, fig1.level_split(0), 4))
    m = mu_weights(fig1)
    assert eigenvalue_set(m, fig1, B) <= {-1, 0, 1}
    assert is_edge_weight(m, fig1, B).holds
    assert is_component_weight(m, fig1, B, max_pairs=400).holds


def test_mu_refused_without_ec():
    P = build_poset(ColorGraph("a"), [("x", "a"), ("y", "a")], [])
    with pytest.raises(RefusedError):
        mu_weights(P)


@settings(max_examples=150, deadline=None)
@given(finite_posets())
def test_mu_matches_definition(P):
    assume(P.is_ec())
    L = enumerate_splits(P)
    m = mu_weights(P)
    for s in L.splits:
        I = frozenset(P.ideal_of(s))
        for a in P.graph.colors:
            assert m.value(a, s) == mu(P, a, I)


def test_mu_prime_equals_mu_under_ec_ac_i2a():
    seen = 0
    for _, P in instance_generator(6, 3, "random", seed=21):
        if not all(prop_holds(P, p) for p in ("EC", "AC", "I2A")):
            continue
        L = enumerate_splits(P)
        m, mp = mu_weights(P), mu_prime_weights(P)
        assert all(m.value(a, s) == mp.value(a, s) for s in L.splits for a in P.graph.colors)
        assert is_edge_weight(m, L).holds
        assert satisfies_min_rule(m, L) and satisfies_max_rule(m, L)
        seen += 1
        if seen == 200:
            break


@settings(max_examples=150, deadline=None)
@given(finite_posets(), st.data())
def test_edge_iff_component(P, data):
    L = enumerate_splits(P)
    s0 = data.draw(st.sampled_from(L.splits))
    base = {a: data.draw(frac_values()) for a in P.graph.colors}
    eta = tabulate(construct_weight(L, (s0, base)), L)
    assert eta.value(P.graph.colors[0], s0) == base[P.graph.colors[0]]
    assert is_edge_weight(eta, L).holds and is_component_weight(eta, L).holds
    if data.draw(st.booleans()):
        table = dict(eta.values(L.splits))
        key = (data.draw(st.sampled_from(P.graph.colors)), data.draw(st.sampled_from(L.splits)))
        table[key] += data.draw(st.sampled_from([-1, 1, Fraction(1, 2)]))
        eta = WeightFunction(P.graph, table)
    assert is_edge_weight(eta, L).holds == is_component_weight(eta, L).holds


@settings(max_examples=100, deadline=None)
@given(finite_posets())
def test_solver_meets_pins_or_reports_conflict(P):
    L = enumerate_splits(P)
    pins = {(a, s): -1 for s in L.splits for a in min_colors(L, s)}
    eta, reason = solve_edge_weight(L, pins)
    if eta is None:
        assert reason
        # no edge weight can meet the pins, so in particular mu (if defined) does not
        if P.is_ec():
            m = mu_weights(P)
            assert not (is_edge_weight(m, L).holds and satisfies_min_rule(m, L))
    else:
        assert is_edge_weight(eta, L).holds
        assert all(eta.value(a, s) == v for (a, s), v in pins.items())


def test_solver_detects_disagreeing_pins(fig2):
    L = enumerate_splits(fig2)
    eta, reason = solve_edge_weight(L, {("a", 0): 0, ("a", L.splits[1]): 0})
    assert eta is None and "disagree" in reason


def test_uniqueness_probe(fig2):
    L = enumerate_splits(fig2)
    m = tabulate(mu_weights(fig2), L)
    rep = uniqueness_probe(L, m)
    assert rep.holds and rep.notes == ["eta equals mu"]
    other = tabulate(construct_weight(L, (0, {a: 0 for a in fig2.graph.colors})), L)
    assert uniqueness_probe(L, other).notes == ["eta is outside the probe's scope"]
    P = build_poset(ColorGraph("ab", [("a", "b")]), [("x", "a"), ("y", "b")], [])
    with pytest.raises(RefusedError):
        uniqueness_probe(enumerate_splits(P), tabulate(lambda a, s: 0, enumerate_splits(P)))


def test_rows_round_trip(fig2):
    L = enumerate_splits(fig2)
    rng = random.Random(3)
    eta = tabulate(construct_weight(L, (0, {a: Fraction(rng.randint(-9, 9), 4)
                                            for a in fig2.graph.colors})), L)
    rows = eta.to_rows(L)
    assert rows[0].keys() == {"color", "split", "value"}
    back = WeightFunction.from_rows(L, rows)
    assert back.values(L.splits) == eta.values(L.splits)


def test_format_value():
    assert format_value(2) == "2"
    assert format_value(Fraction(-3, 6)) == "-1/2"
