"""Classification of colored posets and the two-sided equivalence harness.

:func:`classify_poset` decides the colored d-complete and minuscule
properties.  :func:`build_representation` assembles the operators an algebra
needs and verifies its relations.  :func:`verify_equivalences` evaluates each
characterization twice, once from the coloring properties and once from the
operators and weight functions alone, and reports whether the sides agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product

from .errors import HeaplabError, RefusedError
from .operators import (
    Operators,
    expand_relations,
    SplitVector,
    check_square_nilpotent,
    interior_splits,
    verify_relations,
)
from .periodic import LegPoset, PeriodicHeap
from .poset import ColorGraph, build_poset
from .properties import check_all, check_property
from .splits import SplitLattice, enumerate_splits
from .weights import (
    WeightFunction,
    WeightReport,
    check_minuscule_conditions,
    construct_weight,
    eigenvalue_set,
    is_component_weight,
    is_edge_weight,
    max_colors,
    min_colors,
    mu_weights,
    satisfies_max_rule,
    satisfies_min_rule,
    solve_edge_weight,
    tabulate,
)

__all__ = [
    "AlgebraKind",
    "ClassificationReport",
    "RepresentationReport",
    "EquivalenceReport",
    "classify_poset",
    "build_representation",
    "verify_equivalences",
    "duality_checks",
    "nilpotency_guard",
    "instance_generator",
    "run_harness",
]


class AlgebraKind(Enum):
    n_plus = "n_plus"
    n_minus = "n_minus"
    b_plus_derived = "b_plus_derived"
    b_minus_derived = "b_minus_derived"
    g_derived = "g_derived"

    @property
    def relations(self):
        return _RELATIONS[self]

    @classmethod
    def parse(cls, name):
        key = name.replace("-", "_").lower()
        key = _ALIASES.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise HeaplabError(f"unknown algebra {name!r}") from None


_RELATIONS = {
    AlgebraKind.n_plus: ("XX",),
    AlgebraKind.n_minus: ("YY",),
    AlgebraKind.b_plus_derived: ("XX", "HH", "HX"),
    AlgebraKind.b_minus_derived: ("YY", "HH", "HY"),
    AlgebraKind.g_derived: ("XX", "YY", "HH", "HX", "HY", "XY"),
}
_ALIASES = {
    "b_plus": "b_plus_derived",
    "b_minus": "b_minus_derived",
    "g_prime": "g_derived",
    "g": "g_derived",
}


# -- classification -------------------------------------------------------------

@dataclass
class ClassificationReport:
    d_complete: bool
    minuscule: bool
    property_reports: list
    witnesses: list

    def to_json(self):
        return {
            "d_complete": self.d_complete,
            "minuscule": self.minuscule,
            "properties": [r.to_json() for r in self.property_reports],
        }


_D_COMPLETE = ("EC", "NA", "AC", "I2A", "Mx1GA")


def classify_poset(P, window=3):
    """Colored d-complete (EC, NA, AC, I2A, Mx1GA) and minuscule (plus Mn1LA)."""
    reports = check_all(P, 1, window)
    holds = {r.property: r.holds for r in reports}
    d = all(holds[p] for p in _D_COMPLETE)
    m = d and holds["Mn1LA"]
    wit = [(r.property, r.witness) for r in reports if not r.holds]
    return ClassificationReport(d, m, reports, wit)


# -- representations ------------------------------------------------------------

@dataclass
class RepresentationReport:
    kind: AlgebraKind
    relations: list
    square_nilpotent: dict
    minuscule: object = None
    eigenvalues: set = None
    scope: str = "all splits"
    notes: list = field(default_factory=list)

    @property
    def relations_hold(self):
        return all(r.holds for r in self.relations)

    @property
    def holds(self):
        ok = self.relations_hold and all(self.square_nilpotent.values())
        if self.kind in (AlgebraKind.b_plus_derived, AlgebraKind.b_minus_derived,
                         AlgebraKind.g_derived):
            ok = ok and self.minuscule is not None and self.minuscule.holds
        return ok

    def failures(self):
        out = [r for r in self.relations if not r.holds]
        return out

    def to_json(self):
        out = {
            "algebra": self.kind.value,
            "scope": self.scope,
            "holds": self.holds,
            "relations": [r.to_json() for r in self.relations],
            "square_nilpotent": dict(self.square_nilpotent),
        }
        if self.minuscule is not None:
            out["minuscule_conditions"] = {
                "holds": self.minuscule.holds,
                "witness": _jsonish(self.minuscule.witness),
            }
        if self.eigenvalues is not None:
            out["eigenvalues"] = sorted(str(v) for v in self.eigenvalues)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _jsonish(w):
    if w is None:
        return None
    return {k: (str(v) if not isinstance(v, (int, str, bool, list)) else v)
            for k, v in w.items()}


def _domain_for(P, lattice=None, seed=None, radius=4):
    """``(space for operators, splits, scope text)``."""
    if isinstance(P, (PeriodicHeap, LegPoset)):
        if seed is None:
            if not isinstance(P, PeriodicHeap):
                raise HeaplabError("a seed split is required")
            seed = P.level_split(0)
        splits = interior_splits(P, seed, radius)
        return P, splits, f"interior of radius-{radius} ball ({len(splits)} splits)"
    L = lattice if lattice is not None else enumerate_splits(P)
    return L, L.splits, "all splits"


def build_representation(P, kind, lattice=None, seed=None, radius=4):
    """Assemble the operators for ``kind`` and verify its relations.

    Diagonal operators are the mu-diagonal ones; when mu is undefined (EC
    fails) the report carries that reason and does not hold.
    """
    kind = AlgebraKind.parse(kind) if isinstance(kind, str) else kind
    space, splits, scope = _domain_for(P, lattice, seed, radius)
    finite = isinstance(space, SplitLattice)
    base = space.poset if finite else space
    if not finite and not base.is_ec():
        raise RefusedError("operators on an infinite poset need EC")
    needs_h = kind not in (AlgebraKind.n_plus, AlgebraKind.n_minus)
    notes = []
    eta = None
    if needs_h:
        if base.is_ec():
            dom = None if finite else _closure(space, splits)
            eta = tabulate(mu_weights(base), space, splits=dom)
        else:
            notes.append("mu is undefined because EC fails")
    names = [r for r in expand_relations(kind.relations)
             if eta is not None or not (r.startswith("H") or r == "XY.i")]
    rels = verify_relations(space, names, eta, splits=splits)
    for r in rels:
        r.scope = scope
    sq = {}
    fams = {"n_plus": "X", "b_plus_derived": "X", "n_minus": "Y", "b_minus_derived": "Y"}
    for fam in ([fams[kind.value]] if kind.value in fams else ["X", "Y"]):
        sq[fam] = check_square_nilpotent(space, fam, splits)[0]
    minus = None
    eig = None
    if needs_h:
        if eta is None:
            minus = WeightReport(False, {"reason": "mu undefined (EC fails)"})
        else:
            mode = {"b_plus_derived": "upper", "b_minus_derived": "lower"}.get(kind.value, "full")
            minus = check_minuscule_conditions(eta, space, mode, splits=splits)
            eig = eigenvalue_set(eta, space, splits=splits)
    return RepresentationReport(kind, rels, sq, minus, eig, scope, notes)


def _closure(space, splits):
    """``splits`` plus everything within three steps (where relation words reach)."""
    from .periodic import split_neighbors

    seen = set(splits)
    frontier = list(splits)
    for _ in range(3):
        nxt = []
        for s in frontier:
            for _, _, t in split_neighbors(space, s):
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return list(seen)


# -- two-sided equivalences ---------------------------------------------------

@dataclass
class EquivalenceReport:
    """One row per characterization: every side's verdict and agreement."""

    rows: list = field(default_factory=list)

    def add(self, name, sides, note=""):
        vals = list(sides.values())
        self.rows.append({"theorem": name, "sides": dict(sides),
                          "agree": all(v == vals[0] for v in vals), "note": note})

    @property
    def disagreements(self):
        return [r for r in self.rows if not r["agree"]]

    @property
    def ok(self):
        return not self.disagreements


class _Algebra:
    """Memoized operator-side facts about one finite lattice."""

    def __init__(self, L):
        self.L = L
        self.G = L.graph
        self._rel = {}
        self._sq = {}

    def sq(self, fam):
        if fam not in self._sq:
            self._sq[fam] = check_square_nilpotent(self.L, fam)[0]
        return self._sq[fam]

    def rel(self, names, eta=None, key=None):
        k = (tuple(names), key)
        if key is None or k not in self._rel:
            ok = all(r.holds for r in verify_relations(self.L, names, eta))
            if key is None:
                return ok
            self._rel[k] = ok
        return self._rel[k]

    def pins(self, lo=True, hi=False):
        p = {}
        for s in self.L.splits:
            if lo:
                for a in min_colors(self.L, s):
                    p[a, s] = -1
            if hi:
                for a in max_colors(self.L, s):
                    if p.get((a, s)) == -1:
                        return None
                    p[a, s] = 1
        return p

    def solve(self, lo, hi):
        p = self.pins(lo, hi)
        if p is None:
            return None
        if lo:
            eta, _ = solve_edge_weight(self.L, p)
        else:
            # unpinned pieces must stay below +1, so put their maximum at 0
            eta, _ = solve_edge_weight(self.L, p, free_offset=lambda pots: -max(pots))
        return eta

    def rule_weight(self):
        """The -1 / +1 / 0 rule; ``None`` when a split would need both signs."""
        table = {}
        for s in self.L.splits:
            mins, maxs = min_colors(self.L, s), max_colors(self.L, s)
            for a in self.G.colors:
                if a in mins and a in maxs:
                    return None
                table[a, s] = -1 if a in mins else 1 if a in maxs else 0
        return WeightFunction(self.G, table, name="rule")

    def forced_h(self):
        """``H_a := [X_a, Y_a]`` if it is diagonal at every split, else ``None``."""
        ops = Operators(self.L)
        table = {}
        for s in self.L.splits:
            v = SplitVector.basis(s)
            for a in self.G.colors:
                d = ops.X(a, ops.Y(a, v)) - ops.Y(a, ops.X(a, v))
                if any(t != s for t in d):
                    return None
                table[a, s] = d.get(s, 0)
        return WeightFunction(self.G, table, name="forced")


def _perturbed(eta, L, rng):
    s = rng.choice(L.splits)
    a = rng.choice(L.graph.colors)
    table = dict(eta.values(L.splits))
    table[a, s] += rng.choice((-1, 1, 2))
    return WeightFunction(L.graph, table, name="perturbed")


def verify_equivalences(P, cap=None, seed=0):
    """Evaluate every characterization from both sides on a finite poset."""
    L = enumerate_splits(P, cap)
    A = _Algebra(L)
    rng = random.Random(seed)
    props = {r.property: r.holds for r in check_all(P, 1)}
    EC, ND, NA, I3ND, AC, I2A = (props[p] for p in ("EC", "ND", "NA", "I3ND", "AC", "I2A"))
    Mx, Mn = props["Mx1GA"], props["Mn1LA"]
    rep = EquivalenceReport()

    xsq, ysq = A.sq("X"), A.sq("Y")
    rep.add("square_nilpotency", {"X-square nilpotent": xsq, "EC and ND": EC and ND,
                        "Y-square nilpotent": ysq})
    if EC and ND:
        rep.add("distant_commutation", {"XX.i": A.rel(["XX.i"], key="x"), "NA": NA,
                           "YY.i": A.rel(["YY.i"], key="x")})
        rep.add("serre_relation", {"XX.ii": A.rel(["XX.ii"], key="x"), "I3ND": I3ND,
                           "YY.ii": A.rel(["YY.ii"], key="x")})
    n_plus = xsq and A.rel(["XX"], key="x")
    n_minus = ysq and A.rel(["YY"], key="x")
    rep.add("n_square_nilpotent", {"n+ square nilpotent": n_plus, "EC, NA, I3ND": EC and NA and I3ND,
                       "n- square nilpotent": n_minus})

    zero = {a: 0 for a in L.graph.colors}
    eta_c = tabulate(construct_weight(L, (rng.choice(L.splits), zero)), L)
    tests = [("constructed", eta_c), ("perturbed", _perturbed(eta_c, L, rng))]
    mu = tabulate(mu_weights(P), L) if EC else None
    if mu is not None:
        tests.append(("mu", mu))
    if EC:
        for label, eta in tests:
            rep.add("edge_weight_diagonal", {"HX": A.rel(["HX"], eta, key=label),
                                "edge weight": is_edge_weight(eta, L).holds,
                                "HY": A.rel(["HY"], eta, key=label)}, label)

    b_plus = n_plus and A.rel(["HH", "HX"], eta_c, key="constructed")
    b_minus = n_minus and A.rel(["HH", "HY"], eta_c, key="constructed")
    rep.add("b_square_nilpotent", {"n+": n_plus, "b'+": b_plus, "EC, NA, I3ND": EC and NA and I3ND,
                       "b'-": b_minus, "n-": n_minus})

    eta_lo = A.solve(True, False)
    eta_hi = A.solve(False, True)
    rep.add("rule_weight_existence", {"min rule weight exists": eta_lo is not None,
                         "EC, AC, I2A": EC and AC and I2A,
                         "max rule weight exists": eta_hi is not None})
    if EC and AC and I2A:
        rep.add("mu_rule_weight", {"mu edge weight": is_edge_weight(mu, L).holds,
                             "mu min rule": satisfies_min_rule(mu, L),
                             "mu max rule": satisfies_max_rule(mu, L), "expected": True})

    upper = (n_plus and eta_lo is not None
             and A.rel(["HH", "HX"], eta_lo, key="lo")
             and check_minuscule_conditions(eta_lo, L, "upper").holds)
    lower = (n_minus and eta_hi is not None
             and A.rel(["HH", "HY"], eta_hi, key="hi")
             and check_minuscule_conditions(eta_hi, L, "lower").holds)
    base5 = EC and NA and AC and I2A
    rep.add("upper_minuscule", {"upper P-minuscule b'+": upper, "EC,NA,AC,I2A,Mx1GA": base5 and Mx})
    rep.add("lower_minuscule", {"lower P-minuscule b'-": lower, "EC,NA,AC,I2A,Mn1LA": base5 and Mn})
    if base5 and Mx:
        rep.add("mu_upper_minuscule", {"mu upper": build_representation(
            P, AlgebraKind.b_plus_derived, L).holds, "expected": True})
    if base5 and Mn:
        rep.add("mu_lower_minuscule", {"mu lower": build_representation(
            P, AlgebraKind.b_minus_derived, L).holds, "expected": True})

    eta_both = A.solve(True, True)
    same_h = (n_plus and n_minus and eta_both is not None
              and A.rel(["HH", "HX", "HY"], eta_both, key="both")
              and check_minuscule_conditions(eta_both, L, "upper").holds
              and check_minuscule_conditions(eta_both, L, "lower").holds)
    eta_rule = A.rule_weight()
    rule_rep = (eta_rule is not None
                and A.rel(["XX", "HH", "HX", "YY", "HY"], eta_rule, key="rule"))
    six = base5 and Mx and Mn
    rep.add("shared_diagonal", {"same H upper and lower": same_h, "rule H represents": rule_rep,
                       "six properties": six})
    if six:
        same = all(mu.value(a, s) == eta_rule.value(a, s) == eta_both.value(a, s)
                   for s in L.splits for a in L.graph.colors)
        rep.add("shared_diagonal_unique", {"mu equals rule and solved H": same, "expected": True})

    forced = A.forced_h()
    sq_forced = (xsq and ysq and forced is not None
                 and A.rel(["XX", "YY", "HH", "HX", "HY"], forced, key="forced"))
    g_min = (forced is not None
             and A.rel(["XX", "YY", "HH", "HX", "HY", "XY"], forced, key="forced-g")
             and check_minuscule_conditions(forced, L, "full").holds)
    rep.add("g_minuscule", {"six properties": six, "square nilpotent with [X,Y]=H": sq_forced,
                       "g' P-minuscule": g_min, "rule H represents b'": rule_rep})
    if six:
        rep.add("g_minuscule_unique", {"forced H equals mu": all(
            forced.value(a, s) == mu.value(a, s) for s in L.splits for a in L.graph.colors),
            "expected": True})

    cls = classify_poset(P)
    rep.add("d_complete_characterization", {"d-complete": cls.d_complete, "upper P-minuscule b'+": upper,
                        "mu b'+ representation": build_representation(
                            P, AlgebraKind.b_plus_derived, L).holds})
    rep.add("minuscule_characterization", {"minuscule": cls.minuscule, "g' P-minuscule": g_min,
                        "mu g' representation": build_representation(
                            P, AlgebraKind.g_derived, L).holds})
    rep.lattice = L
    rep.weights = [eta for _, eta in tests] + [e for e in (eta_lo, eta_hi, eta_both, eta_rule,
                                                           forced) if e is not None]
    return rep


def nilpotency_guard(L, weights):
    """For each weight with HX and values in {-1,0,1}, X must be square nilpotent.

    Returns ``(applicable, exceptions)`` counts.
    """
    applicable = exceptions = 0
    xsq = None
    for eta in weights:
        if not eigenvalue_set(eta, L) <= {-1, 0, 1}:
            continue
        if not all(r.holds for r in verify_relations(L, ["HX"], eta)):
            continue
        applicable += 1
        if xsq is None:
            xsq = check_square_nilpotent(L, "X")[0]
        if not xsq:
            exceptions += 1
    return applicable, exceptions


def duality_checks(P, lattice=None):
    """Property, operator and representation duality between ``P`` and its dual.

    Returns a list of failure descriptions (empty when everything matches).
    """
    D = P.dual()
    fails = []
    pairs = [("EC", "EC"), ("ND", "ND"), ("NA", "NA"), ("I3ND", "I3ND"), ("AC", "AC"),
             ("I2A", "I2A"), ("Mx1GA", "Mn1LA"), ("Mn1LA", "Mx1GA")]
    for p, q in pairs:
        if check_property(P, p).holds != check_property(D, q).holds:
            fails.append(f"{p} on P differs from {q} on the dual")
    L = lattice if lattice is not None else enumerate_splits(P)
    LD = enumerate_splits(D)
    opsP, opsD = Operators(L), Operators(LD)
    for s in L.splits:
        sd = P.dual_split(s)
        for a in P.graph.colors:
            x = opsP.X(a, SplitVector.basis(s))
            y = opsD.Y(a, SplitVector.basis(sd))
            if {P.dual_split(t): c for t, c in x.items()} != dict(y):
                fails.append(f"X_{a} on P and Y_{a} on the dual differ at {s}")
    for k1, k2 in ((AlgebraKind.b_plus_derived, AlgebraKind.b_minus_derived),
                   (AlgebraKind.n_plus, AlgebraKind.n_minus)):
        if build_representation(P, k1, L).holds != build_representation(D, k2, LD).holds:
            fails.append(f"{k1.value} on P differs from {k2.value} on the dual")
    return fails


# -- instances ----------------------------------------------------------------

COLOR_NAMES = "abcdefghijklmnopqrstuvwxyz"


def _order_relations(n):
    """All partial orders on 0..n-1 compatible with the natural order.

    Yields the list of strict down-sets (bitmasks).
    """
    def rec(j, downs):
        if j == n:
            yield list(downs)
            return
        for S in range(1 << j):
            ok = True
            m = S
            while m:
                low = m & -m
                i = low.bit_length() - 1
                if downs[i] & ~S:
                    ok = False
                    break
                m ^= low
            if ok:
                downs.append(S)
                yield from rec(j + 1, downs)
                downs.pop()
    yield from rec(0, [])


def _covers_from_downs(downs):
    n = len(downs)
    covers = []
    for j in range(n):
        for i in range(j):
            if downs[j] >> i & 1:
                # i is covered by j unless some k sits strictly between
                if not any(downs[k] >> i & 1 and downs[j] >> k & 1 for k in range(i + 1, j)):
                    covers.append((i, j))
    return covers


def _graphs(colors):
    pairs = list(combinations(colors, 2))
    for mask in range(1 << len(pairs)):
        yield ColorGraph(colors, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def _poset(G, coloring, covers):
    elems = [(f"e{i}", c) for i, c in enumerate(coloring)]
    return build_poset(G, elems, [(f"e{i}", f"e{j}") for i, j in covers])


def instance_generator(max_elements, max_colors, mode="exhaustive", seed=0):
    """Stream ``(graph, poset)`` instances.

    exhaustive: every naturally labelled poset on exactly ``max_elements``
    elements, every coloring onto exactly ``max_colors`` colors, every simple
    graph on those colors.  random: an endless seeded stream with at most
    ``max_elements`` elements and ``max_colors`` colors, half random orders and
    half heaps of random color words.
    """
    if mode == "exhaustive":
        if max_elements > 6:
            raise HeaplabError(f"exhaustive mode is limited to 6 elements, got {max_elements}")
        if max_colors > max_elements or max_colors < 1 and max_elements > 0:
            return
        colors = tuple(COLOR_NAMES[:max_colors])
        graphs = list(_graphs(colors))
        orders = [_covers_from_downs(d) for d in _order_relations(max_elements)]
        colorings = [c for c in product(colors, repeat=max_elements) if set(c) == set(colors)]
        for covers in orders:
            for coloring in colorings:
                for G in graphs:
                    yield G, _poset(G, coloring, covers)
    elif mode == "random":
        if max_elements > 12:
            raise HeaplabError(f"random mode is limited to 12 elements, got {max_elements}")
        rng = random.Random(seed)
        while True:
            yield _random_instance(rng, max_elements, max_colors)
    else:
        raise HeaplabError(f"unknown mode {mode!r}")


def _random_instance(rng, max_elements, max_colors):
    n = rng.randint(1, max_elements)
    m = rng.randint(1, min(max_colors, n))
    colors = tuple(COLOR_NAMES[:m])
    pairs = list(combinations(colors, 2))
    G = ColorGraph(colors, [p for p in pairs if rng.random() < 0.5])
    coloring = list(colors) + [rng.choice(colors) for _ in range(n - m)]
    rng.shuffle(coloring)
    downs = [0] * n
    if rng.random() < 0.5:
        p = rng.random()
        for j in range(n):
            for i in range(j):
                if rng.random() < p:
                    downs[j] |= (1 << i) | downs[i]
    else:
        # heap of the word ``coloring``: letters commute unless equal or adjacent
        for j in range(n):
            for i in range(j):
                if coloring[i] == coloring[j] or G.adjacent(coloring[i], coloring[j]):
                    downs[j] |= (1 << i) | downs[i]
    return G, _poset(G, coloring, _covers_from_downs(downs))


def _streams(max_elements, max_colors, mode, seed, count):
    if mode == "exhaustive":
        if max_elements > 6:
            raise HeaplabError(f"exhaustive mode is limited to 6 elements, got {max_elements}")
        for n in range(1, max_elements + 1):
            for m in range(1, min(n, max_colors) + 1):
                yield from instance_generator(n, m, "exhaustive")
    else:
        gen = instance_generator(max_elements, max_colors, mode, seed)
        for _ in range(1000 if count is None else count):
            yield next(gen)


def _harness_part(args):
    max_elements, max_colors, mode, seed, count, duality, part, jobs = args
    agreements = {}
    failures = []
    totals = {"instances": 0, "disagreements": 0, "duality_failures": 0,
              "nilpotency_guard_applicable": 0, "nilpotency_guard_exceptions": 0}
    for idx, (G, P) in enumerate(_streams(max_elements, max_colors, mode, seed, count)):
        if idx % jobs != part:
            continue
        totals["instances"] += 1
        rep = verify_equivalences(P, seed=idx)
        for row in rep.rows:
            # [agree, disagree, agree with every side true]
            c = agreements.setdefault(row["theorem"], [0, 0, 0])
            if row["agree"]:
                c[0] += 1
                c[2] += all(row["sides"].values())
            else:
                c[1] += 1
                totals["disagreements"] += 1
                failures.append((idx, {"instance": _dump(P), "row": _row_json(row)}))
        app, exc = nilpotency_guard(rep.lattice, rep.weights)
        totals["nilpotency_guard_applicable"] += app
        totals["nilpotency_guard_exceptions"] += exc
        if exc:
            failures.append((idx, {"instance": _dump(P), "nilpotency_guard": exc}))
        if duality:
            f = duality_checks(P, rep.lattice)
            if f:
                totals["duality_failures"] += 1
                failures.append((idx, {"instance": _dump(P), "duality": f}))
        del failures[5:]
    return totals, agreements, failures


def _row_json(row):
    return {"theorem": row["theorem"], "sides": dict(row["sides"]), "note": row["note"]}


def run_harness(max_elements, max_colors, mode="exhaustive", seed=0, count=None,
                duality=True, jobs=1):
    """Run :func:`verify_equivalences`, duality checks and the nilpotency guard.

    Exhaustive mode covers every size up to the limits; random mode draws
    ``count`` instances (default 1000).  Instances are striped over ``jobs``
    worker processes and merged in instance order, so the summary does not
    depend on ``jobs``.  The summary holds totals, per-theorem counts
    ``[agree, disagree, all sides true]`` and up to five failure dumps.
    """
    if mode == "exhaustive" and max_elements > 6:
        raise HeaplabError(f"exhaustive mode is limited to 6 elements, got {max_elements}")
    if mode not in ("exhaustive", "random"):
        raise HeaplabError(f"unknown mode {mode!r}")
    jobs = max(1, int(jobs))
    args = [(max_elements, max_colors, mode, seed, count, duality, k, jobs)
            for k in range(jobs)]
    if jobs == 1:
        parts = [_harness_part(args[0])]
    else:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            parts = pool.map(_harness_part, args)
    summary = {"mode": mode, "max_elements": max_elements, "max_colors": max_colors,
               "seed": seed, "instances": 0, "disagreements": 0, "duality_failures": 0,
               "nilpotency_guard_applicable": 0, "nilpotency_guard_exceptions": 0, "agreements": {}}
    failures = []
    for totals, agreements, fails in parts:
        for k, v in totals.items():
            summary[k] += v
        for name, c in agreements.items():
            acc = summary["agreements"].setdefault(name, [0, 0, 0])
            for i in range(3):
                acc[i] += c[i]
        failures.extend(fails)
    failures.sort(key=lambda f: f[0])
    summary["agreements"] = dict(sorted(summary["agreements"].items()))
    summary["failures"] = [dict(f[1], index=f[0]) for f in failures[:5]]
    return summary


def _dump(P):
    from .io import poset_to_json

    return poset_to_json(P)
