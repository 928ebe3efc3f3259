"""Classification, representations, the equivalence harness and instance streams."""

import json

import pytest
from hypothesis import given, settings

from heaplab import (
    AlgebraKind,
    ColorGraph,
    HeaplabError,
    build_poset,
    build_representation,
    classify_poset,
    duality_checks,
    instance_generator,
    run_harness,
    verify_equivalences,
)
from heaplab.io import poset_to_json
from conftest import chain
from oracles import finite_posets, prop_holds


def rows(rep):
    return {r["theorem"]: r for r in rep.rows}


def test_fig2_classification(fig2):
    c = classify_poset(fig2)
    assert c.d_complete and not c.minuscule
    assert c.witnesses == [("Mn1LA", {"extreme": "z", "offenders": ["u", "v", "q"]})]


def test_fig1_classification(fig1):
    c = classify_poset(fig1)
    assert c.d_complete and c.minuscule


def test_fig2_equivalences(fig2):
    rep = verify_equivalences(fig2)
    assert rep.ok
    r = rows(rep)
    assert all(r["upper_minuscule"]["sides"].values())
    assert not any(r["g_minuscule"]["sides"].values())


def test_two_chain_adjacent_colors():
    rep = rows(verify_equivalences(chain("ab", [("a", "b")])))
    assert all(rep["n_square_nilpotent"]["sides"].values())


def test_two_chain_same_color():
    rep = rows(verify_equivalences(chain("aa")))
    assert not any(rep["square_nilpotency"]["sides"].values())


def test_build_representation_fig2(fig2):
    assert build_representation(fig2, "b-plus").holds
    g = build_representation(fig2, AlgebraKind.g_derived)
    assert not g.holds
    assert [(r.relation, r.colors) for r in g.failures()] == [("XY.i", ("d",))]


def test_build_representation_fig1_interior(fig1):
    rep = build_representation(fig1, "g-prime", radius=4)
    assert rep.holds and rep.eigenvalues <= {-1, 0, 1}
    assert rep.scope.startswith("interior")


def test_build_representation_without_ec():
    P = build_poset(ColorGraph("a"), [("x", "a"), ("y", "a")], [])
    rep = build_representation(P, "b-plus")
    assert not rep.holds and rep.notes == ["mu is undefined because EC fails"]


def test_algebra_aliases():
    assert AlgebraKind.parse("g-prime") is AlgebraKind.g_derived
    assert AlgebraKind.parse("b-minus") is AlgebraKind.b_minus_derived
    assert AlgebraKind.n_plus.relations == ("XX",)
    with pytest.raises(HeaplabError):
        AlgebraKind.parse("sl2")


@pytest.mark.parametrize("n,m,count", [(1, 1, 1), (2, 1, 2), (2, 2, 8), (3, 1, 7),
                                       (4, 1, 40), (5, 1, 357)])
def test_exhaustive_counts(n, m, count):
    assert sum(1 for _ in instance_generator(n, m, "exhaustive")) == count


def test_exhaustive_instances_have_exact_sizes():
    for G, P in instance_generator(3, 2, "exhaustive"):
        assert P.n == 3 and len(G.colors) == 2 and set(P.color.values()) == set(G.colors)


def test_size_guard():
    with pytest.raises(HeaplabError):
        next(instance_generator(7, 1, "exhaustive"))
    with pytest.raises(HeaplabError):
        run_harness(7, 1)


def test_random_stream_is_deterministic():
    def first(seed):
        gen = instance_generator(5, 3, "random", seed)
        return [json.dumps(poset_to_json(next(gen)[1])) for _ in range(20)]

    assert first(7) == first(7)
    assert first(7) != first(8)


def test_harness_small_exhaustive():
    s = run_harness(3, 2)
    assert s["instances"] == 1 + 2 + 8 + 7 + 84
    assert s["disagreements"] == 0 and s["duality_failures"] == 0
    assert s["nilpotency_guard_exceptions"] == 0


def test_harness_independent_of_jobs():
    assert run_harness(5, 3, "random", seed=4, count=60, jobs=1) == \
        run_harness(5, 3, "random", seed=4, count=60, jobs=2)


@settings(max_examples=100, deadline=None)
@given(finite_posets())
def test_duality_and_equivalences_on_random_posets(P):
    assert duality_checks(P) == []
    rep = verify_equivalences(P)
    assert rep.ok, rep.disagreements
    d = all(prop_holds(P, p) for p in ("EC", "NA", "AC", "I2A", "Mx1GA"))
    assert classify_poset(P).d_complete == d


@pytest.mark.parametrize("radius", [5, 7, 9])
def test_fig1_larger_interiors(fig1, radius):
    rep = build_representation(fig1, "g-prime", radius=radius)
    assert rep.holds
    # a shifted seed certifies a different stretch of the heap
    assert build_representation(fig1, "g-prime", seed=fig1.level_split(5), radius=radius).holds
