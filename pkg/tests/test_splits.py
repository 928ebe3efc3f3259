"""Split enumeration, colored edges, export and Delta counts."""

import pytest
from hypothesis import given, settings, strategies as st

from heaplab import CapacityError, ColorGraph, SplitLattice, build_poset, enumerate_splits
from heaplab.splits import colored_edges, components, delta, split_cap
from oracles import antichains, delta as brute_delta, finite_posets, ideals, raise_split


def test_fig2_has_13_splits_and_19_edges(fig2):
    L = enumerate_splits(fig2)
    assert len(L) == 13
    assert len(L.edges) == 19


def test_two_antichain_has_4_splits():
    P = build_poset(ColorGraph("a"), [("x", "a"), ("y", "a")], [])
    assert len(enumerate_splits(P)) == 4


def test_capacity_error(fig2, monkeypatch):
    with pytest.raises(CapacityError):
        enumerate_splits(fig2, cap=12)
    monkeypatch.setenv("HEAPLAB_SPLIT_CAP", "5")
    assert split_cap() == 5
    with pytest.raises(CapacityError):
        enumerate_splits(fig2)


def test_json_round_trip(fig2):
    L = enumerate_splits(fig2)
    L2 = SplitLattice.from_json(fig2, L.to_json())
    assert L2.splits == L.splits and L2.edges == L.edges


def test_dot_uses_color_labels(fig2):
    dot = enumerate_splits(fig2).to_dot()
    assert dot.startswith("digraph")
    assert dot.count('[label="') >= 13 + 19
    assert 'label="d"' in dot


def test_finite_lattice_is_connected(fig2):
    assert len(components(enumerate_splits(fig2))) == 1


@settings(max_examples=150, deadline=None)
@given(finite_posets())
def test_split_count_matches_ideals_and_antichains(P):
    L = enumerate_splits(P)
    brute = ideals(P)
    assert len(L) == len(brute) == len(antichains(P))
    assert {frozenset(L.ideal(s)) for s in L.splits} == set(brute)


@settings(max_examples=100, deadline=None)
@given(finite_posets())
def test_edges_match_brute_force(P):
    L = enumerate_splits(P)
    def key(I):
        return tuple(sorted(I))

    got = sorted((key(P.ideal_of(s)), key(P.ideal_of(t)), c) for s, t, c in colored_edges(L))
    want = sorted((key(I), key(J), a) for I in ideals(P) for a in P.graph.colors
                  for J in raise_split(P, I, a))
    assert got == want


@settings(max_examples=100, deadline=None)
@given(finite_posets(), st.data())
def test_delta_is_additive_and_matches_counts(P, data):
    L = enumerate_splits(P)
    s, t, u = (data.draw(st.sampled_from(L.splits)) for _ in range(3))
    for b in P.graph.colors:
        I = {x: frozenset(P.ideal_of(x)) for x in (s, t, u)}
        assert delta(L, b, t, s) == brute_delta(P, b, I[t], I[s])
        assert delta(L, b, u, s) == delta(L, b, u, t) + delta(L, b, t, s)
