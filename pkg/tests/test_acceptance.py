"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import random
import time
from fractions import Fraction

import pytest

from heaplab import (
    ColorGraph,
    RefusedError,
    WeightFunction,
    build_poset,
    check_all,
    classify_poset,
    construct_weight,
    eigenvalue_set,
    enumerate_splits,
    heap_components,
    is_component_weight,
    is_edge_weight,
    load_fixture,
    mu_weights,
    run_harness,
    tabulate,
    uniqueness_probe,
    verify_relations,
)
from heaplab.periodic import ball
from heaplab.properties import check_property
from heaplab.weights import check_minuscule_conditions, component_law_holds

# the equivalences the harness must evaluate on every instance where they apply
EQUIVALENCES = (
    "square_nilpotency", "distant_commutation", "serre_relation", "n_square_nilpotent",
    "edge_weight_diagonal", "b_square_nilpotent", "rule_weight_existence",
    "upper_minuscule", "lower_minuscule", "shared_diagonal", "g_minuscule",
    "d_complete_characterization", "minuscule_characterization",
)
RANDOM_INSTANCES = 10_000


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def harness():
    t = time.perf_counter()
    exhaustive = run_harness(4, 2, "exhaustive", jobs=1)
    rand = run_harness(6, 3, "random", seed=0, count=RANDOM_INSTANCES, jobs=1)
    return exhaustive, rand, time.perf_counter() - t


def test_criterion_1_fig2_end_to_end(capsys):
    t = time.perf_counter()
    P = load_fixture("fig2")
    L = enumerate_splits(P)
    cls = classify_poset(P)
    mn = {r.property: r for r in check_all(P)}["Mn1LA"]
    mu = tabulate(mu_weights(P), L)
    at_bottom = {a: mu.value(a, P.bottom_split()) for a in P.graph.colors}
    eig = eigenvalue_set(mu, L)
    rels = verify_relations(L, ["XX", "HH", "HX"], mu)
    upper = check_minuscule_conditions(mu, L, "upper")
    elapsed = time.perf_counter() - t
    checks = {
        "13 splits": len(L) == 13,
        "d_complete": cls.d_complete,
        "not minuscule": not cls.minuscule,
        "Mn1LA witness": (mn.witness["extreme"] == "z" and len(mn.witness["offenders"]) == 3),
        "mu at bottom": at_bottom == {"a": -1, "b": 0, "c": 0, "d": 2, "g": -1},
        "eigenvalues": eig == {-1, 0, 1, 2},
        "b'+ relations": all(r.holds for r in rels),
        "upper conditions": upper.holds,
        "runtime < 1 s": elapsed < 1,
    }
    bad = [k for k, v in checks.items() if not v]
    report(capsys, 1, not bad, f"{elapsed:.3f}s; failed: {bad}" if bad else f"{elapsed:.3f}s")


def test_criterion_2_fig1_full_heap(capsys):
    t = time.perf_counter()
    H = load_fixture("fig1")
    reps = check_all(H, k=1, window=3)
    props_ok = all(r.holds for r in reps)
    windows_agree = all("windows 3 and 4 agree" in r.notes for r in reps)
    seed = H.level_split(0)
    mu = mu_weights(H)
    rels = verify_relations(H, ["XX", "YY", "HH", "HX", "HY", "XY"], mu, seed=seed, radius=4)
    eig = eigenvalue_set(mu, H, list(ball(H, seed, 4)))
    elapsed = time.perf_counter() - t
    ok = (props_ok and windows_agree and all(r.holds for r in rels)
          and eig <= {-1, 0, 1} and elapsed < 10)
    report(capsys, 2, ok, f"{len(rels)} relation instances on {rels[0].scope}; "
                          f"eigenvalues {sorted(eig)}; {elapsed:.2f}s")


def test_criterion_3_equivalence_suite(capsys, harness):
    exhaustive, rand, elapsed = harness
    missing = [n for n in EQUIVALENCES
               if n not in exhaustive["agreements"] or n not in rand["agreements"]]
    dis = exhaustive["disagreements"] + rand["disagreements"]
    ok = (not missing and dis == 0 and rand["instances"] >= 10_000
          and exhaustive["instances"] > 0 and elapsed < 300)
    first = (exhaustive["failures"] + rand["failures"])[:1]
    report(capsys, 3, ok,
           f"{exhaustive['instances']} exhaustive + {rand['instances']} random instances, "
           f"{dis} disagreements, {elapsed:.1f}s" + (f"; missing {missing}" if missing else "")
           + (f"; first failure {first}" if first else ""))


def test_criterion_4_duality(capsys, harness):
    exhaustive, rand, _ = harness
    fails = exhaustive["duality_failures"] + rand["duality_failures"]
    n = exhaustive["instances"] + rand["instances"]
    report(capsys, 4, fails == 0, f"{n} instances, {fails} with a duality exception")


def _weight_classes():
    """Instance classes as ``(name, space, splits)``."""
    fig2 = load_fixture("fig2")
    G = ColorGraph("abc", [("a", "b"), ("b", "c")])
    grid = build_poset(G, [("p", "b"), ("q", "a"), ("r", "c"), ("s", "b")],
                       [("p", "q"), ("p", "r"), ("q", "s"), ("r", "s")])
    anti = build_poset(ColorGraph("ab", [("a", "b")]),
                       [("x", "a"), ("y", "a"), ("z", "b")], [("x", "z")])
    fig1 = load_fixture("fig1")
    out = []
    for name, P in (("fig2", fig2), ("fig2 dual", fig2.dual()), ("square", grid),
                    ("non-EC", anti)):
        L = enumerate_splits(P)
        out.append((name, L, L.splits))
    out.append(("fig1 ball", fig1, list(ball(fig1, fig1.level_split(0), 3))))
    return out


def test_criterion_5_weight_laws(capsys):
    rng = random.Random(5)
    per_class = 100
    total = disagree = triples = trans_fail = probes = probe_fail = 0
    for name, L, splits in _weight_classes():
        colors = L.graph.colors
        sp = L.poset if hasattr(L, "poset") else L
        try:
            mu = tabulate(mu_weights(sp), L, splits)
        except RefusedError:
            mu = None
        probe_ok = all(check_property(sp, p).holds for p in ("EC", "AC", "I2A"))
        for i in range(per_class):
            s0 = rng.choice(splits)
            if mu is not None and i % 10 == 0:
                base = {a: mu.value(a, s0) for a in colors}
            else:
                base = {a: Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for a in colors}
            eta = tabulate(construct_weight(L, (s0, base), splits), L, splits)
            if i % 2:
                table = dict(eta.values(splits))
                table[rng.choice(colors), rng.choice(splits)] += rng.choice((-1, 1, 2))
                eta = WeightFunction(L.graph, table)
            total += 1
            edge = is_edge_weight(eta, L, splits).holds
            comp = is_component_weight(eta, L, splits).holds
            disagree += edge != comp
            for _ in range(20):
                s, t, u = (rng.choice(splits) for _ in range(3))
                for b in colors:
                    if component_law_holds(L, eta, b, t, s) and component_law_holds(L, eta, b, u, t):
                        triples += 1
                        trans_fail += not component_law_holds(L, eta, b, u, s)
            if probe_ok:
                rep = uniqueness_probe(L, eta, splits=splits)
                probes += rep.notes == ["eta equals mu"]
                probe_fail += not rep.holds
    ok = disagree == 0 and trans_fail == 0 and probe_fail == 0 and probes > 0
    report(capsys, 5, ok, f"{total} weights over 5 classes, {disagree} law disagreements, "
                          f"{triples} transitive triples ({trans_fail} failures), "
                          f"{probes} probes confirming eta = mu ({probe_fail} failures)")


def test_criterion_6_zchain_components(capsys):
    comps = heap_components(load_fixture("zchain"))
    report(capsys, 6, len(comps) == 3, f"{len(comps)} components")


def test_criterion_7_nilpotency_guard(capsys, harness):
    exhaustive, rand, _ = harness
    app = exhaustive["nilpotency_guard_applicable"] + rand["nilpotency_guard_applicable"]
    exc = exhaustive["nilpotency_guard_exceptions"] + rand["nilpotency_guard_exceptions"]
    report(capsys, 7, exc == 0 and app > 0, f"{app} applicable weights, {exc} exceptions")
