"""Weight functions on splits.

A weight function assigns a number to every ``(color, split)``.  This module
computes the census-based weight ``mu`` (and its filter-side twin
``mu_prime``), checks the edge and component laws, builds weight functions
from base values, and decides whether some edge weight function exists with
prescribed values at prescribed splits.

Every function here takes a *split space*: a finite poset, a periodic heap or
a leg poset, all of which answer the same census questions.  Finite domains
are usually given as a :class:`~heaplab.splits.SplitLattice`.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HeaplabError, RefusedError
from .splits import SplitLattice, navigator

__all__ = [
    "WeightFunction",
    "WeightReport",
    "Census",
    "upsilon_census",
    "psi_census",
    "compute_upsilon",
    "compute_psi",
    "compute_mu",
    "compute_mu_prime",
    "mu_weights",
    "mu_prime_weights",
    "tabulate",
    "is_edge_weight",
    "is_component_weight",
    "component_law_holds",
    "construct_weight",
    "eigenvalue_set",
    "check_minuscule_conditions",
    "satisfies_min_rule",
    "satisfies_max_rule",
    "uniqueness_probe",
    "solve_edge_weight",
    "min_colors",
    "max_colors",
    "format_value",
]


def format_value(v):
    """Exact ``"p/q"`` (or ``"n"``) string for a weight value."""
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


class WeightFunction:
    """Values ``eta_a(s)``, stored in a table or produced by a rule on demand."""

    def __init__(self, graph, table=None, rule=None, name=""):
        self.graph = graph
        self.table = dict(table or {})
        self.rule = rule
        self.name = name

    def __repr__(self):
        return f"WeightFunction({self.name or 'anonymous'}, {len(self.table)} values)"

    def value(self, a, s):
        try:
            return self.table[a, s]
        except KeyError:
            pass
        if self.rule is None:
            raise HeaplabError(f"weight undefined at color {a!r}, split {s!r}")
        v = self.rule(a, s)
        self.table[a, s] = v
        return v

    __call__ = value

    def values(self, splits):
        return {(a, s): self.value(a, s) for s in splits for a in self.graph.colors}

    def to_rows(self, L):
        """JSON rows ``{"color", "split", "value"}`` over a lattice (split = index)."""
        return [
            {"color": a, "split": i, "value": format_value(self.value(a, s))}
            for i, s in enumerate(L.splits)
            for a in self.graph.colors
        ]

    @classmethod
    def from_rows(cls, L, rows, name=""):
        table = {}
        for r in rows:
            table[r["color"], L.splits[r["split"]]] = Fraction(r["value"])
        return cls(L.graph, table, name=name)


@dataclass
class WeightReport:
    holds: bool
    witness: dict | None = None
    checked: int = 0
    notes: list = field(default_factory=list)


def _space(L):
    return L.poset if isinstance(L, SplitLattice) else L


def _domain(L, splits):
    if splits is None:
        if not isinstance(L, SplitLattice):
            raise HeaplabError("an infinite split space needs an explicit list of splits")
        splits = L.splits
    return navigator(L), list(splits)


def _require_ec(space):
    if not space.is_ec():
        raise RefusedError("the census weights need EC (unique color extremes)")


# -- census sets ------------------------------------------------------------

@dataclass
class Census:
    """The census set above a color maximum (or below a color minimum)."""

    extreme: object
    members: list
    infinite_colors: list

    @property
    def value(self):
        return len(self.members) + (1 if self.infinite_colors else 0)


def upsilon_census(space, b, s):
    """The census above the maximum of color ``b`` in the ideal, or ``None``."""
    space = _space(space)
    _require_ec(space)
    y = space.max_in_ideal(s, b)
    if y is None:
        return None
    members, infinite = [], []
    for c in space.graph.neighbors(b):
        zs = space.greater_in_ideal(s, y, c)
        if zs is None:
            infinite.append(c)
        else:
            members.extend(zs)
    return Census(y, members, infinite)


def psi_census(space, b, s):
    """The census below the minimum of color ``b`` in the filter, or ``None``."""
    space = _space(space)
    _require_ec(space)
    y = space.min_in_filter(s, b)
    if y is None:
        return None
    members, infinite = [], []
    for c in space.graph.neighbors(b):
        zs = space.less_in_filter(s, y, c)
        if zs is None:
            infinite.append(c)
        else:
            members.extend(zs)
    return Census(y, members, infinite)


def compute_upsilon(space, b, s):
    c = upsilon_census(space, b, s)
    return 1 if c is None else c.value


def compute_psi(space, b, s):
    c = psi_census(space, b, s)
    return 1 if c is None else c.value


def compute_mu(space, b, s):
    sp = _space(space)
    if sp.ideal_meets(s, b):
        return 1 - compute_upsilon(sp, b, s)
    return -1 + compute_psi(sp, b, s)


def compute_mu_prime(space, b, s):
    sp = _space(space)
    if not sp.filter_meets(s, b):
        return 1 - compute_upsilon(sp, b, s)
    return -1 + compute_psi(sp, b, s)


def mu_weights(space):
    """``mu`` as a lazily evaluated :class:`WeightFunction`."""
    sp = _space(space)
    _require_ec(sp)
    return WeightFunction(sp.graph, rule=lambda a, s: compute_mu(sp, a, s), name="mu")


def mu_prime_weights(space):
    sp = _space(space)
    _require_ec(sp)
    return WeightFunction(sp.graph, rule=lambda a, s: compute_mu_prime(sp, a, s), name="mu'")


def tabulate(eta, L, splits=None):
    """Evaluate ``eta`` everywhere on a domain and freeze it into a table."""
    _, splits = _domain(L, splits)
    get = eta.value if hasattr(eta, "value") else eta
    G = _space(L).graph
    table = {(a, s): get(a, s) for s in splits for a in G.colors}
    return WeightFunction(G, table, name=getattr(eta, "name", ""))


# -- laws ---------------------------------------------------------------------

def _get(eta):
    return eta.value if hasattr(eta, "value") else eta


def is_edge_weight(eta, L, splits=None):
    """Check ``eta_b(up) - eta_b(down) = theta(edge color, b)`` on every edge.

    With an explicit ``splits`` list (infinite spaces), only edges with both
    ends in the list are checked.
    """
    nav, splits = _domain(L, splits)
    inside = set(splits)
    get = _get(eta)
    G = nav.graph
    n = 0
    for s in splits:
        for a in G.colors:
            for t in nav.raise_(s, a):
                if t not in inside:
                    continue
                for b in G.colors:
                    n += 1
                    d = get(b, t) - get(b, s)
                    if d != G.theta(a, b):
                        return WeightReport(False, {
                            "from": s, "to": t, "edge_color": a, "color": b,
                            "difference": d, "expected": G.theta(a, b)}, n)
    return WeightReport(True, None, n)


def component_law_holds(space, eta, b, t, s):
    """Whether ``eta_b(t) - eta_b(s) = 2 Delta_b - sum of adjacent Delta_c``."""
    sp = _space(space)
    get = _get(eta)
    G = sp.graph
    rhs = 2 * sp.delta(b, t, s) - sum(sp.delta(c, t, s) for c in G.neighbors(b))
    return get(b, t) - get(b, s) == rhs


def _same_component(L, s, t):
    if isinstance(L, SplitLattice):
        return L.component_of(s) == L.component_of(t)
    return L.same_component(s, t)


def is_component_weight(eta, L, splits=None, max_pairs=None, seed=0):
    """Check the Delta law on every same-component pair (or a seeded sample).

    ``max_pairs`` bounds the work: when the domain has more ordered pairs,
    that many are drawn uniformly with ``random.Random(seed)``.
    """
    _, splits = _domain(L, splits)
    sp = _space(L)
    G = sp.graph
    n = len(splits)
    if max_pairs is None or n * n <= max_pairs:
        pairs = ((s, t) for s in splits for t in splits)
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(splits), rng.choice(splits)) for _ in range(max_pairs))
    count = 0
    for s, t in pairs:
        if not _same_component(L, s, t):
            continue
        for b in G.colors:
            count += 1
            if not component_law_holds(sp, eta, b, t, s):
                return WeightReport(False, {"from": s, "to": t, "color": b}, count)
    return WeightReport(True, None, count)


def construct_weight(L, base, splits=None):
    """The component weight function with prescribed values at base splits.

    ``base`` is a list of ``(split, {color: value})`` pairs, one per component
    (a single pair is accepted).  The result is evaluated lazily from the
    Delta counts to the base split of the same component.
    """
    if isinstance(base, tuple) and len(base) == 2 and isinstance(base[1], dict):
        base = [base]
    sp = _space(L)
    G = sp.graph
    bases = []
    for s0, vals in base:
        missing = [a for a in G.colors if a not in vals]
        if missing:
            raise HeaplabError(f"base values miss colors {missing!r}")
        bases.append((s0, {a: Fraction(vals[a]) if not isinstance(vals[a], int)
                           else vals[a] for a in G.colors}))
    if isinstance(L, SplitLattice):
        by_comp = {}
        for s0, vals in bases:
            by_comp.setdefault(L.component_of(s0), (s0, vals))
        for k in set(L.component_ids().values()):
            if k not in by_comp:
                raise HeaplabError(f"no base split for component {k}")

        def find(s):
            return by_comp[L.component_of(s)]
    else:
        def find(s):
            for s0, vals in bases:
                if sp.same_component(s0, s):
                    return s0, vals
            raise HeaplabError("no base split in the component of this split")

    def rule(b, s):
        s0, vals = find(s)
        return (vals[b] + 2 * sp.delta(b, s, s0)
                - sum(sp.delta(c, s, s0) for c in G.neighbors(b)))

    eta = WeightFunction(G, rule=rule, name="constructed")
    if splits is not None or isinstance(L, SplitLattice):
        _, dom = _domain(L, splits)
        for s in dom:
            for a in G.colors:
                eta.value(a, s)
    return eta


def eigenvalue_set(eta, L, splits=None):
    _, splits = _domain(L, splits)
    get = _get(eta)
    G = _space(L).graph
    return {get(a, s) for s in splits for a in G.colors}


def min_colors(nav, s):
    """Colors of the minimal elements of the filter of ``s``."""
    return {a for a in nav.graph.colors if nav.raise_(s, a)}


def max_colors(nav, s):
    """Colors of the maximal elements of the ideal of ``s``."""
    return {a for a in nav.graph.colors if nav.lower(s, a)}


def _is_int(v):
    return Fraction(v).denominator == 1


def check_minuscule_conditions(eta, L, mode="upper", splits=None):
    """The diagonal conditions for upper, lower, or full minuscule representations.

    upper: values are integers ``>= -1`` and ``-1`` occurs exactly where the
    filter has a minimal element of that color.  lower: the dual, with ``+1``
    and maximal ideal elements.  full: values lie in ``{-1, 0, 1}``.
    """
    if mode not in ("upper", "lower", "full"):
        raise HeaplabError(f"unknown mode {mode!r}")
    nav, splits = _domain(L, splits)
    get = _get(eta)
    G = nav.graph
    for s in splits:
        mins = min_colors(nav, s) if mode == "upper" else None
        maxs = max_colors(nav, s) if mode == "lower" else None
        for a in G.colors:
            v = get(a, s)
            if mode == "full":
                if v not in (-1, 0, 1):
                    return WeightReport(False, {"split": s, "color": a, "value": v,
                                                "reason": "eigenvalue outside {-1,0,1}"})
                continue
            if not _is_int(v) or (v < -1 if mode == "upper" else v > 1):
                return WeightReport(False, {"split": s, "color": a, "value": v,
                                            "reason": "eigenvalue out of range"})
            if mode == "upper" and (v == -1) != (a in mins):
                return WeightReport(False, {"split": s, "color": a, "value": v,
                                            "reason": "-1 does not match minimal filter colors"})
            if mode == "lower" and (v == 1) != (a in maxs):
                return WeightReport(False, {"split": s, "color": a, "value": v,
                                            "reason": "+1 does not match maximal ideal colors"})
    return WeightReport(True)


def satisfies_min_rule(eta, L, splits=None):
    """``eta_b = -1`` whenever ``b`` colors a minimal element of the filter."""
    nav, splits = _domain(L, splits)
    get = _get(eta)
    return all(get(a, s) == -1 for s in splits for a in min_colors(nav, s))


def satisfies_max_rule(eta, L, splits=None):
    """``eta_b = +1`` whenever ``b`` colors a maximal element of the ideal."""
    nav, splits = _domain(L, splits)
    get = _get(eta)
    return all(get(a, s) == 1 for s in splits for a in max_colors(nav, s))


def uniqueness_probe(L, eta, properties=None, splits=None):
    """Compare ``eta`` with ``mu`` where uniqueness of ``mu`` is guaranteed.

    Requires EC, AC and I2A (``properties`` may supply precomputed verdicts)
    and a component with an edge of every color.  Returns a
    :class:`WeightReport` whose ``holds`` says whether the probe's conclusion
    is confirmed: either ``eta`` is not an edge weight function meeting the
    min or max rule, or it agrees with ``mu`` everywhere on the domain.
    """
    from .properties import check_property

    sp = _space(L)
    props = dict(properties or {})
    for p in ("EC", "AC", "I2A"):
        if p not in props:
            props[p] = check_property(sp, p).holds
        if not props[p]:
            raise RefusedError(f"uniqueness needs {p}, which fails")
    nav, dom = _domain(L, splits)
    seen = set()
    for s in dom:
        seen |= min_colors(nav, s)
    missing = [a for a in sp.graph.colors if a not in seen]
    if missing:
        raise RefusedError(f"the component has no edge of colors {missing!r}")
    edge = is_edge_weight(eta, L, splits)
    rule = satisfies_min_rule(eta, L, splits) or satisfies_max_rule(eta, L, splits)
    if not (edge.holds and rule):
        return WeightReport(True, None, notes=["eta is outside the probe's scope"])
    mu = mu_weights(sp)
    get = _get(eta)
    for s in dom:
        for a in sp.graph.colors:
            if get(a, s) != mu.value(a, s):
                return WeightReport(False, {"split": s, "color": a,
                                            "eta": get(a, s), "mu": mu.value(a, s)})
    return WeightReport(True, None, notes=["eta equals mu"])


# -- existence ----------------------------------------------------------------

def solve_edge_weight(L, pins=None, splits=None, free_offset=None):
    """Find an edge weight function with prescribed values, or prove none exists.

    ``pins`` maps ``(color, split)`` to a required value.  For each color the
    edge law fixes all differences within a connected piece of the domain, so
    a solution exists exactly when those differences are consistent and all
    pins in a piece agree on its offset.  Pieces without pins get the offset
    ``free_offset(potentials)`` (default: smallest value 0).

    Returns ``(WeightFunction, None)`` or ``(None, reason)``.
    """
    nav, splits = _domain(L, splits)
    inside = set(splits)
    G = nav.graph
    pins = pins or {}
    if free_offset is None:
        def free_offset(pots):
            return -min(pots)
    table = {}
    for b in G.colors:
        done = set()
        for root in splits:
            if root in done:
                continue
            pot = {root: 0}
            order = [root]
            todo = deque([root])
            while todo:
                s = todo.popleft()
                for a in G.colors:
                    th = G.theta(a, b)
                    for t, d in [(t, th) for t in nav.raise_(s, a)] + \
                                [(t, -th) for t in nav.lower(s, a)]:
                        if t not in inside:
                            continue
                        want = pot[s] + d
                        if t in pot:
                            if pot[t] != want:
                                return None, f"edge law inconsistent for color {b!r}"
                        else:
                            pot[t] = want
                            order.append(t)
                            todo.append(t)
            done.update(order)
            offset = None
            for s in order:
                if (b, s) in pins:
                    off = pins[b, s] - pot[s]
                    if offset is None:
                        offset = off
                    elif off != offset:
                        return None, (f"pins for color {b!r} disagree "
                                      f"(offsets {offset} and {off})")
            if offset is None:
                offset = free_offset([pot[s] for s in order])
            for s in order:
                table[b, s] = pot[s] + offset
    return WeightFunction(G, table, name="solved"), None
