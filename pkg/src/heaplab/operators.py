"""Color raising/lowering operators, diagonal operators and their relations.

Vectors are finite formal sums of splits with exact coefficients (``int`` or
:class:`fractions.Fraction`).  Operators act through a raise/lower provider
(a :class:`~heaplab.splits.SplitLattice` or a lazy navigator), so nothing is
ever materialized as a matrix unless asked for.

A relation is a list of ``(coefficient, word)`` terms; a word is a tuple of
letters ``("X", a)``, ``("Y", a)`` or ``("H", a)`` applied right to left.  A
relation holds at a split when its terms sum to the zero vector there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import HeaplabError, RefusedError
from .periodic import LegPoset, PeriodicHeap, ball
from .splits import SplitLattice, navigator

__all__ = [
    "SplitVector",
    "Operators",
    "RelationReport",
    "RELATION_SETS",
    "relation_instances",
    "expand_relations",
    "apply_X",
    "apply_Y",
    "diagonal_apply",
    "verify_relations",
    "interior_splits",
    "check_square_nilpotent",
    "check_XY_cross",
    "operator_matrix",
]


class SplitVector(dict):
    """A finite linear combination of splits; zero coefficients are never stored."""

    @classmethod
    def basis(cls, s, coef=1):
        return cls({s: coef}) if coef else cls()

    def add(self, s, c):
        v = self.get(s, 0) + c
        if v:
            self[s] = v
        else:
            self.pop(s, None)

    def __add__(self, other):
        out = SplitVector(self)
        for s, c in other.items():
            out.add(s, c)
        return out

    def __sub__(self, other):
        out = SplitVector(self)
        for s, c in other.items():
            out.add(s, -c)
        return out

    def scale(self, c):
        if not c:
            return SplitVector()
        return SplitVector({s: c * v for s, v in self.items()})

    def is_zero(self):
        return not self

    def __repr__(self):
        return f"SplitVector({dict(self)!r})"


def _weight_getter(eta):
    if eta is None:
        return None
    if hasattr(eta, "value"):
        return eta.value
    return eta


def _refuse_without_ec(space):
    if isinstance(space, (PeriodicHeap, LegPoset)) and not _space_is_ec(space):
        raise RefusedError("operator sums on an infinite poset need EC")


def _space_is_ec(space):
    return space.is_ec()


class Operators:
    """The operators ``X_a``, ``Y_a`` and (given a weight function) ``H_a``."""

    def __init__(self, space, weights=None):
        if isinstance(space, SplitLattice):
            self.space = space.poset
        else:
            self.space = space
            _refuse_without_ec(space)
        self.nav = navigator(space)
        self.graph = self.nav.graph
        self._eta = _weight_getter(weights)

    def X(self, a, v):
        out = SplitVector()
        for s, c in v.items():
            for t in self.nav.raise_(s, a):
                out.add(t, c)
        return out

    def Y(self, a, v):
        out = SplitVector()
        for s, c in v.items():
            for t in self.nav.lower(s, a):
                out.add(t, c)
        return out

    def H(self, a, v):
        if self._eta is None:
            raise HeaplabError("diagonal operators need a weight function")
        out = SplitVector()
        for s, c in v.items():
            out.add(s, c * self._eta(a, s))
        return out

    def letter(self, kind, a, v):
        if kind == "X":
            return self.X(a, v)
        if kind == "Y":
            return self.Y(a, v)
        if kind == "H":
            return self.H(a, v)
        raise HeaplabError(f"unknown operator letter {kind!r}")

    def word(self, word, v):
        for kind, a in reversed(word):
            if not v:
                break
            v = self.letter(kind, a, v)
        return v

    def evaluate(self, terms, s):
        """The vector ``sum(coef * word . <s>)``."""
        out = SplitVector()
        base = SplitVector.basis(s)
        for coef, w in terms:
            for t, c in self.word(w, base).items():
                out.add(t, coef * c)
        return out


def apply_X(space, a, s):
    return Operators(space).X(a, SplitVector.basis(s))


def apply_Y(space, a, s):
    return Operators(space).Y(a, SplitVector.basis(s))


def diagonal_apply(eta, a, s):
    get = _weight_getter(eta)
    return SplitVector.basis(s, get(a, s))


# -- relations -------------------------------------------------------------

RELATION_SETS = {
    "XX": ("XX.i", "XX.ii"),
    "YY": ("YY.i", "YY.ii"),
    "HH": ("HH",),
    "HX": ("HX.i", "HX.ii", "HX.iii"),
    "HY": ("HY.i", "HY.ii", "HY.iii"),
    "XY": ("XY.i", "XY.ii"),
}


def _comm(A, B):
    return [(1, A + B), (-1, B + A)]


def relation_instances(G, name):
    """``[(colors, terms)]`` for a single relation such as ``"HX.ii"``."""
    C = G.colors
    out = []
    if name in ("XX.i", "YY.i"):
        L = name[0]
        for a, b in combinations(C, 2):
            if G.distant(a, b):
                out.append(((a, b), _comm(((L, b),), ((L, a),))))
    elif name in ("XX.ii", "YY.ii"):
        L = name[0]
        for a, b in permutations(C, 2):
            A, B = (L, a), (L, b)
            out.append(((a, b), [(1, (A, A, B)), (-2, (A, B, A)), (1, (B, A, A))]))
    elif name == "HH":
        for a, b in combinations(C, 2):
            out.append(((a, b), _comm((("H", b),), (("H", a),))))
    elif name in ("HX.i", "HY.i"):
        L = name[1]
        sign = 1 if L == "X" else -1
        for a in C:
            out.append(((a,), _comm((("H", a),), ((L, a),)) + [(-2 * sign, ((L, a),))]))
    elif name in ("HX.ii", "HX.iii", "HY.ii", "HY.iii"):
        L = name[1]
        sign = 1 if L == "X" else -1
        want_adj = name.endswith(".ii")
        for a, b in permutations(C, 2):
            if G.adjacent(a, b) != want_adj:
                continue
            terms = _comm((("H", b),), ((L, a),))
            if want_adj:
                terms.append((sign, ((L, a),)))
            out.append(((a, b), terms))
    elif name == "XY.i":
        for a in C:
            out.append(((a,), _comm((("X", a),), (("Y", a),)) + [(-1, (("H", a),))]))
    elif name == "XY.ii":
        for a, b in permutations(C, 2):
            out.append(((a, b), _comm((("X", b),), (("Y", a),))))
    else:
        raise HeaplabError(f"unknown relation {name!r}")
    return out


def expand_relations(relations):
    names = []
    for r in relations:
        if r in RELATION_SETS:
            names.extend(RELATION_SETS[r])
        else:
            names.append(r)
    return names


@dataclass
class RelationReport:
    relation: str
    colors: tuple
    holds: bool
    witness: dict | None = None
    scope: str = "all splits"
    defects: int = 0
    notes: list = field(default_factory=list)

    def to_json(self):
        out = {"relation": self.relation, "colors": list(self.colors), "holds": self.holds}
        if self.witness is not None:
            out["witness"] = {
                "split": _json_split(self.witness["split"]),
                "defect": [[_json_split(s), str(c)] for s, c in self.witness["defect"].items()],
            }
        out["scope"] = self.scope
        return out


def _json_split(s):
    if isinstance(s, tuple):
        return [_json_cut(v) for v in s]
    return s


def _json_cut(v):
    if isinstance(v, tuple):
        return [_json_cut(u) for u in v]
    if v in (float("inf"), float("-inf")):
        return "inf" if v > 0 else "-inf"
    return v


def interior_splits(space, seed, R):
    """Splits of the radius-``R`` ball whose relation words stay inside it."""
    if R < 3:
        raise RefusedError(f"ball radius {R} is shorter than the relation words (3)")
    return [s for s, d in ball(space, seed, R).items() if d <= R - 3]


def verify_relations(space, relations, weights=None, splits=None, exhaustive=False,
                     seed=None, radius=None):
    """Check relation sets (e.g. ``["XX", "HX.ii"]``) at every listed split.

    For a lattice ``splits`` defaults to all of its splits.  For an infinite
    poset pass ``seed`` and ``radius``: only the interior of the ball is
    certified, and reports say so.
    """
    ops = Operators(space, weights)
    scope = "all splits"
    if splits is None:
        if isinstance(space, SplitLattice):
            splits = space.splits
        elif seed is not None and radius is not None:
            splits = interior_splits(space, seed, radius)
            scope = f"interior of radius-{radius} ball ({len(splits)} splits)"
        else:
            raise HeaplabError("give a lattice, explicit splits, or a seed and radius")
    else:
        scope = f"{len(splits)} listed splits"
    reports = []
    for name in expand_relations(relations):
        if (name.startswith("H") or name == "XY.i") and ops._eta is None:
            raise HeaplabError(f"relation {name} needs a weight function")
        for colors, terms in relation_instances(ops.graph, name):
            witness = None
            count = 0
            for s in splits:
                d = ops.evaluate(terms, s)
                if d:
                    count += 1
                    if witness is None:
                        witness = {"split": s, "defect": d}
                    if not exhaustive:
                        break
            reports.append(RelationReport(name, colors, witness is None, witness, scope, count))
    return reports


def check_square_nilpotent(space, family="X", splits=None):
    """``(holds, witness)`` for ``X_a^2 = 0`` (or ``Y_a^2``) at every split and color."""
    ops = Operators(space)
    if splits is None:
        splits = space.splits
    for a in ops.graph.colors:
        for s in splits:
            v = ops.word(((family, a), (family, a)), SplitVector.basis(s))
            if v:
                return False, {"color": a, "split": s, "defect": v}
    return True, None


def check_XY_cross(space, splits=None, seed=None, radius=None):
    """Verify ``[X_b, Y_a] = 0`` for all distinct colors; refuses without EC."""
    P = space.poset if isinstance(space, SplitLattice) else space
    if not _space_is_ec(P):
        raise RefusedError("the cross relation is only guaranteed under EC")
    return verify_relations(space, ["XY.ii"], splits=splits, seed=seed, radius=radius)


def operator_matrix(L, kind, a, weights=None, limit=10_000):
    """Dense matrix (list of rows) of one operator on a lattice, rows = targets."""
    if len(L) > limit:
        raise HeaplabError(f"lattice has {len(L)} splits, more than {limit}")
    ops = Operators(L, weights)
    n = len(L)
    M = [[0] * n for _ in range(n)]
    for j, s in enumerate(L.splits):
        for t, c in ops.letter(kind, a, SplitVector.basis(s)).items():
            M[L.index[t]][j] = c
    return M
