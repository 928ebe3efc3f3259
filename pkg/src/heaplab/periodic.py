"""Infinite colored posets with a finite description.

:class:`PeriodicHeap` encodes a Z-periodic colored poset by a finite set of
cells and shifted covers ``(u, v, k)``: element ``(u, n)`` is covered by
``(v, n + k)`` for every integer ``n``.  Every cell's copies must form a chain
``(u, n) < (u, n + 1)``, so an ideal is described by one integer cutoff per
cell (the *frontier*): ``I = {(u, n) : n <= frontier[u]}``, with ``-inf`` /
``+inf`` for cells lying wholly in the filter / ideal.

:class:`LegPoset` covers the other shape that shows up in practice: a finite
core with finitely many infinite chains ("legs") hanging above or below core
elements, colored periodically.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations, product

from .errors import PosetError, RefusedError, SplitError
from .poset import FinitePoset, build_poset

__all__ = [
    "INF",
    "PeriodicHeap",
    "Window",
    "build_heap",
    "materialize_window",
    "is_full_heap",
    "split_neighbors",
    "ball",
    "heap_components",
    "Leg",
    "LegPoset",
]

INF = math.inf


def _sentinel(v):
    if v == INF:
        return 1
    if v == -INF:
        return -1
    return 0


class PeriodicHeap:
    """A Z-periodic colored poset given by cells and shifted covers."""

    def __init__(self, graph, cells, covers):
        self.graph = graph
        self.cells = tuple(c for c, _ in cells)
        self.cell_color = {}
        for c, col in cells:
            if c in self.cell_color:
                raise PosetError(f"duplicate cell {c!r}")
            if col not in graph:
                raise PosetError(f"cell {c!r} has unknown color {col!r}")
            self.cell_color[c] = col
        self.index = {c: i for i, c in enumerate(self.cells)}
        m = len(self.cells)
        cov = []
        seen = set()
        for u, v, k in covers:
            if u not in self.index or v not in self.index:
                raise PosetError(f"cover ({u!r}, {v!r}, {k}) uses an undeclared cell")
            if int(k) != k:
                raise PosetError(f"shift {k!r} is not an integer")
            t = (u, v, int(k))
            if t in seen:
                raise PosetError(f"duplicate cover {t!r}")
            seen.add(t)
            cov.append(t)
        self.covers = tuple(cov)
        self.up_covers = {c: [] for c in self.cells}
        self.down_covers = {c: [] for c in self.cells}
        for u, v, k in cov:
            self.up_covers[u].append((v, k))
            self.down_covers[v].append((u, k))

        # least total shift of a quiver path u -> v (0 for the empty path)
        D = [[INF] * m for _ in range(m)]
        for i in range(m):
            D[i][i] = 0
        for u, v, k in cov:
            i, j = self.index[u], self.index[v]
            if k < D[i][j]:
                D[i][j] = k
        for w in range(m):
            Dw = D[w]
            for i in range(m):
                dik = D[i][w]
                if dik == INF:
                    continue
                Di = D[i]
                for j in range(m):
                    t = dik + Dw[j]
                    if t < Di[j]:
                        Di[j] = t
        for i in range(m):
            if D[i][i] < 0:
                raise PosetError(
                    f"quiver cycle through {self.cells[i]!r} has negative total shift"
                )
        cyc = [INF] * m
        for u, v, k in cov:
            i, j = self.index[u], self.index[v]
            cyc[i] = min(cyc[i], k + D[j][i])
        for i, c in enumerate(self.cells):
            if cyc[i] <= 0:
                raise PosetError(
                    f"quiver cycle through {c!r} has total shift {cyc[i]} <= 0 "
                    "(the cover relation would be cyclic or not locally finite)"
                )
        for c in self.cells:
            if not self.up_covers[c] or not self.down_covers[c]:
                raise PosetError(f"cell {c!r} needs at least one cover up and one cover down")
        for i, c in enumerate(self.cells):
            if cyc[i] != 1:
                raise PosetError(
                    f"copies of cell {c!r} are not a chain: the shortest closed walk "
                    f"through it has shift {cyc[i]}, not 1"
                )
        self._D = D
        # levels: (u, n) sits at level n + level_offset[u]; all covers go weakly up
        self.level_offset = {
            c: max(-D[i][j] for i in range(m) if D[i][j] != INF)
            for j, c in enumerate(self.cells)
        }
        self.max_level_step = max(
            k + self.level_offset[v] - self.level_offset[u] for u, v, k in cov
        )
        for u, v, k in cov:
            if self._has_intermediate(u, v, k):
                raise PosetError(
                    f"cover ({u!r}, {v!r}, {k}) is implied by a longer chain; "
                    "covers must be transitively reduced"
                )
        self._dual = None
        self._ec = None

    def __repr__(self):
        return f"PeriodicHeap(cells={len(self.cells)}, covers={len(self.covers)})"

    # -- order -------------------------------------------------------------

    def dist(self, u, v):
        """Least ``d`` with ``(u, 0) <= (v, d)``, or ``inf``."""
        return self._D[self.index[u]][self.index[v]]

    def _has_intermediate(self, u, v, k):
        for w in self.cells:
            lo = 1 if w == u else self.dist(u, w)
            hi = k - 1 if w == v else k - self.dist(w, v)
            if lo <= hi:
                return True
        return False

    def leq(self, x, y):
        (u, n), (v, m) = x, y
        return m - n >= self.dist(u, v)

    def less(self, x, y):
        return x != y and self.leq(x, y)

    def comparable(self, x, y):
        return self.leq(x, y) or self.leq(y, x)

    def color_of(self, x):
        return self.cell_color[x[0]]

    def level(self, x):
        return x[1] + self.level_offset[x[0]]

    def cells_of_color(self, b):
        return [c for c in self.cells if self.cell_color[c] == b]

    def is_ec(self):
        """Exact test that equal-colored elements are comparable."""
        if self._ec is None:
            ok = True
            for b in self.graph.colors:
                cs = self.cells_of_color(b)
                for i, u in enumerate(cs):
                    for v in cs[i + 1:]:
                        if self.dist(u, v) + self.dist(v, u) > 1:
                            ok = False
            self._ec = ok
        return self._ec

    def dual(self):
        """Order dual, relabelled by ``(u, n) -> (u, -n)`` so shifts stay positive."""
        if self._dual is None:
            d = PeriodicHeap(
                self.graph,
                [(c, self.cell_color[c]) for c in self.cells],
                [(v, u, k) for u, v, k in self.covers],
            )
            d._dual = self
            self._dual = d
        return self._dual

    @staticmethod
    def dual_element(x):
        return (x[0], -x[1])

    # -- splits ------------------------------------------------------------

    def split(self, frontier):
        """Build and validate a split from a ``cell -> cutoff`` mapping."""
        missing = [c for c in self.cells if c not in frontier]
        if missing:
            raise SplitError(f"frontier misses cells {missing!r}")
        s = tuple(_coerce_cutoff(frontier[c]) for c in self.cells)
        self.check_split(s)
        return s

    def check_split(self, s):
        if len(s) != len(self.cells):
            raise SplitError("frontier has the wrong length")
        for u, v, k in self.covers:
            fu, fv = s[self.index[u]], s[self.index[v]]
            if fu < fv - k:
                raise SplitError(
                    f"frontier is not downward closed at cover ({u!r}, {v!r}, {k})"
                )

    def frontier(self, s):
        return dict(zip(self.cells, s))

    def level_split(self, L=0):
        """The ideal of all elements at level ``<= L``."""
        return tuple(L - self.level_offset[c] for c in self.cells)

    def bottom_split(self):
        return tuple(-INF for _ in self.cells)

    def top_split(self):
        return tuple(INF for _ in self.cells)

    def dual_split(self, s):
        return tuple(-f - 1 for f in s)

    def shift_split(self, s, t=1):
        return tuple(f + t for f in s)

    def min_filter(self, s):
        out = []
        for i, u in enumerate(self.cells):
            f = s[i]
            if f == INF or f == -INF:
                continue
            if all(s[self.index[w]] >= f + 1 - k for w, k in self.down_covers[u]):
                out.append((u, f + 1))
        return out

    def max_ideal(self, s):
        out = []
        for i, u in enumerate(self.cells):
            f = s[i]
            if f == INF or f == -INF:
                continue
            if all(s[self.index[w]] < f + k for w, k in self.up_covers[u]):
                out.append((u, f))
        return out

    def transfer_down(self, s, x):
        u, n = x
        i = self.index[u]
        if s[i] + 1 != n:
            raise SplitError(f"{x!r} is not the lowest filter element of its cell")
        return s[:i] + (n,) + s[i + 1:]

    def transfer_up(self, s, y):
        u, n = y
        i = self.index[u]
        if s[i] != n:
            raise SplitError(f"{y!r} is not the highest ideal element of its cell")
        return s[:i] + (n - 1,) + s[i + 1:]

    def component_key(self, s):
        return tuple(_sentinel(f) for f in s)

    def same_component(self, s, t):
        return self.component_key(s) == self.component_key(t)

    def delta(self, b, s2, s1):
        if not self.same_component(s2, s1):
            raise SplitError("splits are not in the same component")
        total = 0
        for i, u in enumerate(self.cells):
            if self.cell_color[u] == b and _sentinel(s1[i]) == 0:
                total += s2[i] - s1[i]
        return total

    # -- census primitives ---------------------------------------------------

    def ideal_meets(self, s, b):
        return any(s[self.index[u]] > -INF for u in self.cells_of_color(b))

    def filter_meets(self, s, b):
        return any(s[self.index[u]] < INF for u in self.cells_of_color(b))

    def _unique_extreme(self, cands, b, maximum):
        best = [x for x in cands if not any(
            (self.less(x, y) if maximum else self.less(y, x)) for y in cands)]
        if len(best) > 1:
            raise RefusedError(f"color {b!r} has no unique extreme element (EC fails)")
        return best[0] if best else None

    def max_in_ideal(self, s, b):
        cands = []
        for u in self.cells_of_color(b):
            f = s[self.index[u]]
            if f == INF:
                return None
            if f != -INF:
                cands.append((u, f))
        return self._unique_extreme(cands, b, True)

    def min_in_filter(self, s, b):
        cands = []
        for u in self.cells_of_color(b):
            f = s[self.index[u]]
            if f == -INF:
                return None
            if f != INF:
                cands.append((u, f + 1))
        return self._unique_extreme(cands, b, False)

    def greater_in_ideal(self, s, y, c):
        """Color-``c`` ideal elements above ``y``; ``None`` if there are infinitely many."""
        u, n = y
        out = []
        for w in self.cells_of_color(c):
            d = self.dist(u, w)
            if d == INF:
                continue
            lo = n + (1 if w == u else d)
            hi = s[self.index[w]]
            if hi == INF:
                return None
            if hi == -INF:
                continue
            out.extend((w, j) for j in range(lo, hi + 1))
        return out

    def less_in_filter(self, s, y, c):
        u, n = y
        out = []
        for w in self.cells_of_color(c):
            d = self.dist(w, u)
            if d == INF:
                continue
            hi = n - (1 if w == u else d)
            f = s[self.index[w]]
            if f == -INF:
                return None
            if f == INF:
                continue
            out.extend((w, j) for j in range(f + 1, hi + 1))
        return out


def _coerce_cutoff(v):
    if isinstance(v, str):
        t = v.strip().lower()
        if t in ("inf", "+inf"):
            return INF
        if t == "-inf":
            return -INF
        return int(t)
    if v in (INF, -INF):
        return v
    if int(v) != v:
        raise SplitError(f"cutoff {v!r} is not an integer")
    return int(v)


def build_heap(graph, cells, covers):
    """Validate and build a :class:`PeriodicHeap`.

    ``cells`` is a sequence of ``(id, color)`` pairs and ``covers`` of
    ``(from_cell, to_cell, shift)`` triples.
    """
    return PeriodicHeap(graph, list(cells), list(covers))


@dataclass
class Window:
    """A finite slab of a periodic heap."""

    poset: FinitePoset
    boundary: frozenset
    n_min: int
    n_max: int

    def interior(self):
        return [x for x in self.poset.elements if x not in self.boundary]


def materialize_window(H, n_min, n_max):
    """The induced subposet on levels ``n_min..n_max``.

    Levels are chosen so that every cover goes weakly upward, which makes a
    level window convex: its covers are exactly the heap covers between its
    elements.  Elements within ``max_level_step`` of either end are boundary.
    """
    if n_min > n_max:
        raise PosetError(f"empty window {n_min}..{n_max}")
    elems = []
    for L in range(n_min, n_max + 1):
        for c in H.cells:
            elems.append((c, L - H.level_offset[c]))
    inside = set(elems)
    covers = []
    for u, n in elems:
        for v, k in H.up_covers[u]:
            y = (v, n + k)
            if y in inside:
                covers.append(((u, n), y))
    P = build_poset(H.graph, [(x, H.cell_color[x[0]]) for x in elems], covers,
                    restrict_colors=True)
    step = H.max_level_step
    boundary = frozenset(
        x for x in elems if H.level(x) - n_min < step or n_max - H.level(x) < step
    )
    return Window(P, boundary, n_min, n_max)


def is_full_heap(H):
    """Every color occurs on some cell, hence unboundedly above and below."""
    used = set(H.cell_color.values())
    return all(c in used for c in H.graph.colors)


def split_neighbors(space, s):
    """All ``(color, direction, split)`` one Hasse step away from ``s``."""
    out = []
    for x in space.min_filter(s):
        out.append((space.color_of(x), "up", space.transfer_down(s, x)))
    for y in space.max_ideal(s):
        out.append((space.color_of(y), "down", space.transfer_up(s, y)))
    return out


def ball(space, s0, R):
    """Splits within ``R`` Hasse steps of ``s0``, mapped to their distance."""
    dist = {s0: 0}
    todo = deque([s0])
    while todo:
        s = todo.popleft()
        d = dist[s]
        if d == R:
            continue
        for _, _, t in split_neighbors(space, s):
            if t not in dist:
                dist[t] = d + 1
                todo.append(t)
    return dist


def heap_components(H, limit=3 ** 12):
    """One certificate ``(pattern, representative split)`` per component.

    Two splits share a component exactly when every cell is finite in both or
    carries the same sentinel in both, so components correspond to the
    sentinel patterns that are downward closed along the covers.
    """
    m = len(H.cells)
    if 3 ** m > limit:
        raise PosetError(f"too many cells ({m}) to enumerate sentinel patterns")
    out = []
    for pat in product((-1, 0, 1), repeat=m):
        if all(pat[H.index[u]] >= pat[H.index[v]] for u, v, _ in H.covers):
            rep = tuple(
                -INF if p < 0 else INF if p > 0 else -H.level_offset[c]
                for p, c in zip(pat, H.cells)
            )
            H.check_split(rep)
            out.append((dict(zip(H.cells, pat)), rep))
    return out


@dataclass(frozen=True)
class Leg:
    """An infinite chain attached above (``up``) or below (``down``) a core element.

    The ``n``-th element ``(name, n)`` has color ``colors[n % len(colors)]``;
    ``(name, 0)`` is the one adjacent to ``attach``.
    """

    name: str
    attach: object
    direction: str
    colors: tuple

    def color(self, n):
        return self.colors[n % len(self.colors)]

    def count(self, c, lo, hi):
        """Number of ``n`` in ``[lo, hi)`` with color ``c`` (``hi`` may be inf)."""
        if hi == INF:
            return INF if c in self.colors and lo != INF else 0
        return sum(1 for n in range(lo, hi) if self.color(n) == c)


class LegPoset:
    """A finite core poset with infinite periodic legs.

    A split is ``(core_ideal_mask, cuts)``.  For an up-leg the cut is the number
    of its elements in the ideal; for a down-leg it is the number in the filter.
    """

    def __init__(self, graph, core_elements, core_covers, legs):
        colors = dict(core_elements)
        self.core = FinitePoset(graph, [x for x, _ in core_elements], colors, core_covers)
        self.graph = graph
        self.legs = tuple(
            Leg(lg.name, lg.attach, lg.direction, tuple(lg.colors)) for lg in legs
        )
        self.leg_index = {}
        for i, lg in enumerate(self.legs):
            if lg.direction not in ("up", "down"):
                raise PosetError(f"leg {lg.name!r} has direction {lg.direction!r}")
            if lg.attach is not None and lg.attach not in self.core:
                raise PosetError(f"leg {lg.name!r} attaches to unknown {lg.attach!r}")
            if not lg.colors or any(c not in graph for c in lg.colors):
                raise PosetError(f"leg {lg.name!r} has bad colors {lg.colors!r}")
            if lg.name in self.leg_index or lg.name in self.core:
                raise PosetError(f"duplicate leg name {lg.name!r}")
            self.leg_index[lg.name] = i
        self._dual = None

    def __repr__(self):
        return f"LegPoset(core={self.core.n}, legs={len(self.legs)})"

    def _leg(self, x):
        if isinstance(x, tuple) and len(x) == 2 and x[0] in self.leg_index:
            return self.legs[self.leg_index[x[0]]]
        return None

    def color_of(self, x):
        lg = self._leg(x)
        return lg.color(x[1]) if lg else self.core.color_of(x)

    def _core_leq(self, a, b):
        return a is not None and b is not None and self.core.leq(a, b)

    def leq(self, x, y):
        lx, ly = self._leg(x), self._leg(y)
        if lx is None and ly is None:
            return self.core.leq(x, y)
        if lx is None:
            return ly.direction == "up" and self._core_leq(x, ly.attach)
        if lx.direction == "up":
            return ly is lx and y[1] >= x[1]
        if ly is lx:
            return y[1] <= x[1]
        if ly is None:
            return self._core_leq(lx.attach, y)
        return ly.direction == "up" and self._core_leq(lx.attach, ly.attach)

    def less(self, x, y):
        return x != y and self.leq(x, y)

    def is_ec(self):
        """Equal colors comparable; a leg only needs one period to be checked."""
        by_color = {}
        for x in self.core.elements:
            by_color.setdefault(self.core.color[x], []).append(x)
        for lg in self.legs:
            for n, c in enumerate(lg.colors):
                by_color.setdefault(c, []).append((lg.name, n))
        return all(self.leq(x, y) or self.leq(y, x)
                   for xs in by_color.values() for x, y in combinations(xs, 2))

    def dual(self):
        if self._dual is None:
            flip = {"up": "down", "down": "up"}
            d = LegPoset(
                self.graph,
                [(x, self.core.color[x]) for x in self.core.elements],
                [(y, x) for x, y in self.core.covers],
                [Leg(lg.name, lg.attach, flip[lg.direction], lg.colors) for lg in self.legs],
            )
            d._dual = self
            self._dual = d
        return self._dual

    # -- splits ------------------------------------------------------------

    def split(self, core_ideal, cuts):
        s = (self.core.mask(core_ideal),
             tuple(_coerce_cutoff(cuts.get(lg.name, 0)) for lg in self.legs))
        self.check_split(s)
        return s

    def check_split(self, s):
        mask, cuts = s
        if not self.core.is_ideal(mask):
            raise SplitError("core part is not an ideal")
        for lg, k in zip(self.legs, cuts):
            if k < 0:
                raise SplitError(f"negative cut on leg {lg.name!r}")
            if k > 0 and lg.attach is not None:
                in_ideal = bool(mask >> self.core.index[lg.attach] & 1)
                if in_ideal != (lg.direction == "up"):
                    raise SplitError(f"cut on leg {lg.name!r} contradicts its attachment")

    def dual_split(self, s):
        mask, cuts = s
        return (self.core.full & ~mask, cuts)

    def _attach_in_ideal(self, mask, lg):
        return lg.attach is None or bool(mask >> self.core.index[lg.attach] & 1)

    def _attach_in_filter(self, mask, lg):
        return lg.attach is None or not mask >> self.core.index[lg.attach] & 1

    def min_filter(self, s):
        mask, cuts = s
        out = []
        for x in self.core.min_filter(mask):
            if all(not (lg.direction == "down" and lg.attach == x and k > 0)
                   for lg, k in zip(self.legs, cuts)):
                out.append(x)
        for lg, k in zip(self.legs, cuts):
            if k == INF:
                continue
            if lg.direction == "up":
                if k > 0 or self._attach_in_ideal(mask, lg):
                    out.append((lg.name, k))
            elif k > 0:
                out.append((lg.name, k - 1))
        return out

    def max_ideal(self, s):
        mask, cuts = s
        out = []
        for y in self.core.max_ideal(mask):
            if all(not (lg.direction == "up" and lg.attach == y and k > 0)
                   for lg, k in zip(self.legs, cuts)):
                out.append(y)
        for lg, k in zip(self.legs, cuts):
            if k == INF:
                continue
            if lg.direction == "down":
                if k > 0 or self._attach_in_filter(mask, lg):
                    out.append((lg.name, k))
            elif k > 0:
                out.append((lg.name, k - 1))
        return out

    def _set_cut(self, s, i, k):
        mask, cuts = s
        return (mask, cuts[:i] + (k,) + cuts[i + 1:])

    def transfer_down(self, s, x):
        lg = self._leg(x)
        if lg is None:
            return (self.core.transfer_down(s[0], x), s[1])
        i = self.leg_index[lg.name]
        return self._set_cut(s, i, x[1] + 1 if lg.direction == "up" else x[1])

    def transfer_up(self, s, y):
        lg = self._leg(y)
        if lg is None:
            return (self.core.transfer_up(s[0], y), s[1])
        i = self.leg_index[lg.name]
        return self._set_cut(s, i, y[1] if lg.direction == "up" else y[1] + 1)

    def component_key(self, s):
        return tuple(k == INF for k in s[1])

    def same_component(self, s, t):
        return self.component_key(s) == self.component_key(t)

    def delta(self, b, s2, s1):
        if not self.same_component(s2, s1):
            raise SplitError("splits are not in the same component")
        total = self.core.delta(b, s2[0], s1[0])
        for lg, k2, k1 in zip(self.legs, s2[1], s1[1]):
            if k1 == INF:
                continue
            lo, hi = min(k1, k2), max(k1, k2)
            moved = lg.count(b, lo, hi)
            into_ideal = (k2 > k1) == (lg.direction == "up")
            total += moved if into_ideal else -moved
        return total

    # -- census primitives ---------------------------------------------------

    def ideal_meets(self, s, b):
        mask, cuts = s
        if self.core.ideal_meets(mask, b):
            return True
        for lg, k in zip(self.legs, cuts):
            if lg.direction == "up" and lg.count(b, 0, k):
                return True
            if lg.direction == "down" and k != INF and b in lg.colors:
                return True
        return False

    def filter_meets(self, s, b):
        return self.dual().ideal_meets(self.dual_split(s), b)

    def max_in_ideal(self, s, b):
        mask, cuts = s
        cands = []
        top = self.core.max_in_ideal(mask, b)
        if top is not None:
            cands.append(top)
        for lg, k in zip(self.legs, cuts):
            if b not in lg.colors:
                continue
            if lg.direction == "up":
                if k == INF:
                    return None
                hits = [n for n in range(k) if lg.color(n) == b]
                if hits:
                    cands.append((lg.name, hits[-1]))
            elif k != INF:
                n = k
                while lg.color(n) != b:
                    n += 1
                cands.append((lg.name, n))
        best = [x for x in cands if not any(self.less(x, y) for y in cands)]
        if len(best) > 1:
            raise RefusedError(f"color {b!r} has no unique maximum in the ideal (EC fails)")
        return best[0] if best else None

    def min_in_filter(self, s, b):
        return self.dual().max_in_ideal(self.dual_split(s), b)

    def greater_in_ideal(self, s, y, c):
        mask, cuts = s
        ly = self._leg(y)
        out = []
        for z in self.core.ids(mask & self.core.color_mask[c]):
            if self.less(y, z):
                out.append(z)
        for lg, k in zip(self.legs, cuts):
            if lg.direction == "up":
                if ly is lg:
                    lo = y[1] + 1
                elif ly is None:
                    lo = 0 if self._core_leq(y, lg.attach) else None
                elif ly.direction == "down":
                    lo = 0 if self._core_leq(ly.attach, lg.attach) else None
                else:
                    lo = None
                if lo is None or lo >= k:
                    continue
                if k == INF:
                    if c in lg.colors:
                        return None
                    continue
                out.extend((lg.name, n) for n in range(lo, k) if lg.color(n) == c)
            elif ly is lg and k != INF:
                out.extend((lg.name, n) for n in range(k, y[1]) if lg.color(n) == c)
        return out

    def less_in_filter(self, s, y, c):
        return self.dual().greater_in_ideal(self.dual_split(s), y, c)
