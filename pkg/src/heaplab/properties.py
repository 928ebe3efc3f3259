"""The coloring properties EC, ND, NA, I3ND, AC, I2A, MxkGA and MnkLA.

Each property is decided exactly on finite posets, with a witness of the first
violation in canonical element order.  Periodic heaps are checked on a finite
level window (see :func:`heaplab.periodic.materialize_window`); because the
window is convex, every violation seen inside it is a genuine violation of the
heap.  The window is rerun one period larger and both verdicts must agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import HeaplabError
from .periodic import PeriodicHeap, materialize_window
from .poset import _bits

__all__ = [
    "BASIC_PROPERTIES",
    "PropertyReport",
    "parse_property",
    "check_property",
    "check_all",
    "iter_violations",
    "implication_checks",
]

BASIC_PROPERTIES = ("EC", "ND", "NA", "I3ND", "AC", "I2A")
_CENSUS = re.compile(r"^(Mx|Mn)(\d+|k)(GA|LA)$")


@dataclass
class PropertyReport:
    property: str
    holds: bool
    witness: object = None
    k: int | None = None
    notes: list = field(default_factory=list)

    def to_json(self):
        out = {"property": self.property}
        if self.k is not None:
            out["k"] = self.k
        out["holds"] = self.holds
        if self.witness is not None:
            out["witness"] = _json_witness(self.witness)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _json_el(x):
    return list(x) if isinstance(x, tuple) else x


def _json_witness(w):
    if isinstance(w, dict):
        return {k: ([_json_el(x) for x in v] if isinstance(v, list) else _json_el(v))
                for k, v in w.items()}
    return [_json_el(x) for x in w]


def parse_property(prop, k=None):
    """Normalize a property name to ``(family, k)``.

    ``family`` is one of the six basic names or ``"Mx"`` / ``"Mn"``.  Census
    names may carry ``k`` inline (``"Mx1GA"``) or take it from ``k``
    (``"MxkGA"``).
    """
    if prop in BASIC_PROPERTIES:
        return prop, None
    m = _CENSUS.match(prop or "")
    if not m or (m.group(1) == "Mx") != (m.group(3) == "GA"):
        raise HeaplabError(f"unknown property {prop!r}")
    fam = m.group(1)
    if m.group(2) != "k":
        inline = int(m.group(2))
        if k is not None and k != inline:
            raise HeaplabError(f"{prop} conflicts with k={k}")
        k = inline
    if k is None:
        raise HeaplabError(f"{prop} needs k")
    if k < 1:
        raise HeaplabError(f"k must be at least 1, got {k}")
    return fam, k


def _name(fam, k):
    if fam == "Mx":
        return f"Mx{k}GA"
    if fam == "Mn":
        return f"Mn{k}LA"
    return fam


def _adjacent_mask(P, a):
    m = 0
    for c in P.graph.neighbors(a):
        m |= P.color_mask[c]
    return m


def iter_violations(P, prop, k=None):
    """Yield every violation witness of ``prop`` on the finite poset ``P``.

    Witnesses come in canonical element order, so the first one is the
    minimal witness.
    """
    fam, k = parse_property(prop, k)
    E = P.elements
    color = [P.color[x] for x in E]
    up, down = P.up_mask, P.down_mask
    uc = P.upper_cover_mask
    G = P.graph
    n = P.n
    if fam in ("EC", "AC"):
        for i in range(n):
            inc = P.full & ~(up[i] | down[i] | (1 << i)) & ~((2 << i) - 1)
            if fam == "EC":
                target = P.color_mask[color[i]]
            else:
                target = _adjacent_mask(P, color[i])
            for j in _bits(inc & target):
                yield (E[i], E[j])
    elif fam in ("ND", "NA"):
        for i in range(n):
            for j in _bits(uc[i]):
                if fam == "ND":
                    bad = color[i] == color[j]
                else:
                    bad = not G.adjacent(color[i], color[j])
                if bad:
                    yield (E[i], E[j])
    elif fam == "I3ND":
        for i in range(n):
            for j in _bits(uc[i]):
                for l in _bits(uc[j]):
                    if color[i] == color[l] and up[i] & down[l] == 1 << j:
                        yield (E[i], E[j], E[l])
    elif fam == "I2A":
        for i in range(n):
            a = color[i]
            cm = P.color_mask[a]
            adj = _adjacent_mask(P, a)
            for j in _bits(up[i] & cm):
                between = up[i] & down[j]
                if between & cm:
                    continue
                census = between & adj
                if census.bit_count() != 2:
                    yield {"pair": [E[i], E[j]], "census": P.ids(census)}
    else:
        for i in range(n):
            a = color[i]
            cm = P.color_mask[a]
            beyond = up[i] if fam == "Mx" else down[i]
            if beyond & cm:
                continue
            off = beyond & _adjacent_mask(P, a)
            if off.bit_count() > k:
                yield {"extreme": E[i], "offenders": P.ids(off)}


def _witness_elements(w):
    if isinstance(w, dict):
        out = []
        for v in w.values():
            out.extend(v if isinstance(v, list) else [v])
        return out
    return list(w)


def _check_finite(P, fam, k):
    for w in iter_violations(P, _name(fam, k), k):
        return PropertyReport(_name(fam, k), False, w, k)
    return PropertyReport(_name(fam, k), True, None, k)


def _check_window(H, fam, k, W):
    win = materialize_window(H, 0, W - 1)
    P = win.poset
    for w in iter_violations(P, _name(fam, k), k):
        if fam in ("Mx", "Mn"):
            # an extreme of the window is an extreme of the heap only if it
            # is interior; in a periodic heap no color has an extreme at all
            x = w["extreme"]
            if x in win.boundary:
                continue
            shifted = (x[0], x[1] + (1 if fam == "Mx" else -1))
            if H.less(x, shifted) if fam == "Mx" else H.less(shifted, x):
                continue
        elif all(x in win.boundary for x in _witness_elements(w)):
            continue
        return w
    return None


def check_property(P, prop, k=None, window=3):
    """Decide ``prop`` on a finite poset or a periodic heap.

    For a :class:`PeriodicHeap` the check runs on windows of ``window`` and
    ``window + 1`` periods; a disagreement is reported in ``notes`` and the
    larger window's verdict is returned.
    """
    fam, k = parse_property(prop, k)
    if not isinstance(P, PeriodicHeap):
        return _check_finite(P, fam, k)
    if window < 1:
        raise HeaplabError(f"window must be positive, got {window}")
    w1 = _check_window(P, fam, k, window)
    w2 = _check_window(P, fam, k, window + 1)
    notes = []
    if (w1 is None) != (w2 is None):
        notes.append(f"windows {window} and {window + 1} disagree")
    else:
        notes.append(f"windows {window} and {window + 1} agree")
    if fam in ("Mx", "Mn"):
        notes.append("no color has an extreme element in a periodic heap")
    return PropertyReport(_name(fam, k), w2 is None, w2, k, notes)


def check_all(P, k=1, window=3):
    """Reports for all eight properties (census ones at ``k``)."""
    names = list(BASIC_PROPERTIES) + [f"Mx{k}GA", f"Mn{k}LA"]
    return [check_property(P, p, window=window) for p in names]


def implication_checks(P, window=3):
    """Confirm that I2A implies ND and I3ND and that NA implies ND on ``P``.

    Returns ``(consistent, messages)``; an inconsistency means a bug in the
    property checks, never a property of ``P``.
    """
    r = {p: check_property(P, p, window=window).holds for p in BASIC_PROPERTIES}
    msgs = []
    if r["I2A"] and not r["ND"]:
        msgs.append("I2A holds but ND fails")
    if r["I2A"] and not r["I3ND"]:
        msgs.append("I2A holds but I3ND fails")
    if r["NA"] and not r["ND"]:
        msgs.append("NA holds but ND fails")
    return not msgs, msgs
