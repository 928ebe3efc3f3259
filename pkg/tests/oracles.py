"""Brute-force reference implementations used as test oracles.

Everything here works from the order relation ``P.leq`` and the coloring
alone, by direct quantifier expansion over element tuples and subsets, so it
shares no code paths with the bitmask implementations under test.
"""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from heaplab import ColorGraph, build_poset

COLORS = "abc"


# -- order basics ---------------------------------------------------------------

def lt(P, x, y):
    return x != y and P.leq(x, y)


def covers(P):
    E = P.elements
    return [(x, y) for x in E for y in E
            if lt(P, x, y) and not any(lt(P, x, z) and lt(P, z, y) for z in E)]


def ideals(P):
    """Every down-closed subset, as frozensets."""
    E = P.elements
    out = []
    for r in range(len(E) + 1):
        for S in combinations(E, r):
            S = set(S)
            if all(x in S for y in S for x in E if P.leq(x, y)):
                out.append(frozenset(S))
    return out


def antichains(P):
    E = P.elements
    return [S for r in range(len(E) + 1) for S in combinations(E, r)
            if all(not P.leq(x, y) and not P.leq(y, x) for x, y in combinations(S, 2))]


# -- properties -----------------------------------------------------------------

def prop_holds(P, name, k=1):
    E, col, G = P.elements, P.color, P.graph
    if name == "EC":
        return all(P.leq(x, y) or P.leq(y, x)
                   for x, y in combinations(E, 2) if col[x] == col[y])
    if name == "AC":
        return all(P.leq(x, y) or P.leq(y, x)
                   for x, y in combinations(E, 2) if G.adjacent(col[x], col[y]))
    if name == "ND":
        return all(col[x] != col[y] for x, y in covers(P))
    if name == "NA":
        return all(G.adjacent(col[x], col[y]) for x, y in covers(P))
    if name == "I3ND":
        cov = covers(P)
        for x, y in cov:
            for y2, z in cov:
                if y2 != y:
                    continue
                interval = [w for w in E if P.leq(x, w) and P.leq(w, z)]
                if len(interval) == 3 and col[x] == col[z]:
                    return False
        return True
    if name == "I2A":
        for x in E:
            for y in E:
                if not lt(P, x, y) or col[x] != col[y]:
                    continue
                between = [z for z in E if lt(P, x, z) and lt(P, z, y)]
                if any(col[z] == col[x] for z in between):
                    continue
                if sum(1 for z in between if G.adjacent(col[z], col[x])) != 2:
                    return False
        return True
    if name.startswith("Mx") or name.startswith("Mn"):
        upward = name.startswith("Mx")
        for x in E:
            a = col[x]
            beyond = [z for z in E if (lt(P, x, z) if upward else lt(P, z, x))]
            if any(col[z] == a for z in beyond):
                continue
            if sum(1 for z in beyond if G.adjacent(col[z], a)) > k:
                return False
        return True
    raise ValueError(name)


# -- splits, operators and weights ------------------------------------------------

def raise_split(P, I, a):
    """Ideals reached by moving a minimal filter element of color ``a`` into ``I``."""
    F = [x for x in P.elements if x not in I]
    return [I | {x} for x in F
            if P.color[x] == a and not any(lt(P, z, x) for z in F)]


def lower_split(P, I, a):
    return [I - {y} for y in I
            if P.color[y] == a and not any(lt(P, y, z) for z in I)]


def apply_word(P, word, vec, eta=None):
    """Apply letters right to left to ``{frozenset ideal: coefficient}``."""
    for kind, a in reversed(word):
        out = {}
        for I, c in vec.items():
            if kind == "X":
                targets = [(J, c) for J in raise_split(P, I, a)]
            elif kind == "Y":
                targets = [(J, c) for J in lower_split(P, I, a)]
            else:
                targets = [(I, c * eta(a, I))]
            for J, v in targets:
                out[J] = out.get(J, 0) + v
        vec = {J: v for J, v in out.items() if v}
    return vec


def delta(P, b, I2, I1):
    return (sum(1 for x in I2 if P.color[x] == b)
            - sum(1 for x in I1 if P.color[x] == b))


def upsilon(P, b, I):
    Pb = [x for x in I if P.color[x] == b]
    if not Pb:
        return 1
    y = max(Pb, key=lambda x: sum(1 for z in Pb if P.leq(z, x)))
    return sum(1 for z in I if lt(P, y, z) and P.graph.adjacent(P.color[z], b))


def psi(P, b, I):
    F = [x for x in P.elements if x not in I]
    Pb = [x for x in F if P.color[x] == b]
    if not Pb:
        return 1
    y = min(Pb, key=lambda x: sum(1 for z in Pb if P.leq(z, x)))
    return sum(1 for z in F if lt(P, z, y) and P.graph.adjacent(P.color[z], b))


def mu(P, b, I):
    if any(P.color[x] == b for x in I):
        return 1 - upsilon(P, b, I)
    return -1 + psi(P, b, I)


# -- random instances -----------------------------------------------------------

def poset_from_relation(G, coloring, rel):
    """Build a poset from ``rel[i][j]`` (i < j) after closing and reducing it here."""
    n = len(coloring)
    lt_ = [[bool(rel[i][j]) if i < j else False for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if lt_[i][k] and lt_[k][j]:
                    lt_[i][j] = True
    cov = [(f"e{i}", f"e{j}") for i in range(n) for j in range(n)
           if lt_[i][j] and not any(lt_[i][k] and lt_[k][j] for k in range(n))]
    return build_poset(G, [(f"e{i}", c) for i, c in enumerate(coloring)], cov)


@st.composite
def finite_posets(draw, max_elements=6, max_colors=3):
    n = draw(st.integers(1, max_elements))
    m = draw(st.integers(1, min(n, max_colors)))
    colors = COLORS[:m]
    pairs = list(combinations(colors, 2))
    edges = [p for p in pairs if draw(st.booleans())]
    G = ColorGraph(colors, edges)
    coloring = list(colors) + [draw(st.sampled_from(colors)) for _ in range(n - m)]
    coloring = draw(st.permutations(coloring))
    heap = draw(st.booleans())
    rel = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if heap:
                ci, cj = coloring[i], coloring[j]
                rel[i][j] = ci == cj or G.adjacent(ci, cj)
            else:
                rel[i][j] = draw(st.booleans())
    return poset_from_relation(G, coloring, rel)


def frac_values():
    return st.fractions(min_value=-5, max_value=5, max_denominator=4).map(Fraction)
