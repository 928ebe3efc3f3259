"""Finite colored posets and the color graph.

A :class:`ColorGraph` is a finite simple graph whose vertices are the colors.
A :class:`FinitePoset` is a finite poset given by its covering pairs, together
with a coloring of its elements by the vertices of a color graph.

Internally elements are numbered in input order and every order query is
answered from bitmasks (bit ``i`` stands for the ``i``-th element).  Splits of
a finite poset are encoded the same way: a split is the integer bitmask of its
ideal, the filter being the complement.
"""

from __future__ import annotations

from itertools import combinations

from .errors import PosetError, RefusedError

__all__ = [
    "ColorGraph",
    "FinitePoset",
    "build_poset",
    "comparable",
    "open_interval",
    "consecutive_pairs",
    "theta",
]


def _bits(mask):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class ColorGraph:
    """A finite simple graph on an ordered set of colors."""

    def __init__(self, colors, edges=()):
        colors = tuple(colors)
        if len(set(colors)) != len(colors):
            raise PosetError(f"duplicate colors in {colors!r}")
        self.colors = colors
        self.index = {c: i for i, c in enumerate(colors)}
        adj = {c: set() for c in colors}
        seen = set()
        for edge in edges:
            a, b = tuple(edge)
            if a not in self.index or b not in self.index:
                raise PosetError(f"edge {a!r}-{b!r} uses an undeclared color")
            if a == b:
                raise PosetError(f"loop at color {a!r}")
            key = frozenset((a, b))
            if key in seen:
                raise PosetError(f"multiple edge {a!r}-{b!r}")
            seen.add(key)
            adj[a].add(b)
            adj[b].add(a)
        self.edges = frozenset(seen)
        # neighbors listed in canonical color order
        self._adj = {c: tuple(d for d in colors if d in adj[c]) for c in colors}

    def __repr__(self):
        edges = sorted(tuple(sorted(e, key=self.index.get)) for e in self.edges)
        return f"ColorGraph({list(self.colors)!r}, {edges!r})"

    def __eq__(self, other):
        return (
            isinstance(other, ColorGraph)
            and self.colors == other.colors
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.colors, self.edges))

    def __contains__(self, color):
        return color in self.index

    def __len__(self):
        return len(self.colors)

    def _check(self, *colors):
        for c in colors:
            if c not in self.index:
                raise PosetError(f"unknown color {c!r}")

    def neighbors(self, a):
        """Colors adjacent to ``a``, in canonical order."""
        self._check(a)
        return self._adj[a]

    def adjacent(self, a, b):
        self._check(a, b)
        return b in self._adj[a]

    def distant(self, a, b):
        """True when ``a != b`` and ``a``, ``b`` are not adjacent."""
        self._check(a, b)
        return a != b and b not in self._adj[a]

    def degree(self, a):
        return len(self.neighbors(a))

    def theta(self, a, b):
        """Generalized Cartan matrix entry: 2, -1 or 0."""
        self._check(a, b)
        if a == b:
            return 2
        return -1 if b in self._adj[a] else 0

    def cartan_matrix(self):
        return [[self.theta(a, b) for b in self.colors] for a in self.colors]

    def restrict(self, colors):
        """The induced subgraph on ``colors`` (kept in canonical order)."""
        keep = set(colors)
        order = [c for c in self.colors if c in keep]
        edges = [tuple(e) for e in self.edges if e <= keep]
        return ColorGraph(order, edges)

    def edge_list(self):
        out = []
        for a, b in combinations(self.colors, 2):
            if b in self._adj[a]:
                out.append((a, b))
        return out


def theta(G, a, b):
    """``theta_ab`` of the color graph ``G``."""
    return G.theta(a, b)


class FinitePoset:
    """A finite poset colored by the vertices of a :class:`ColorGraph`.

    ``covers`` lists pairs ``(x, y)`` meaning ``x`` is covered by ``y``.  The
    list must be acyclic and transitively reduced.  Surjectivity of the
    coloring is not checked here; see :func:`build_poset`.
    """

    def __init__(self, graph, elements, colors, covers):
        elements = tuple(elements)
        index = {}
        for i, x in enumerate(elements):
            if x in index:
                raise PosetError(f"duplicate element {x!r}")
            index[x] = i
        n = len(elements)
        color = {}
        for x in elements:
            c = colors[x]
            if c not in graph:
                raise PosetError(f"element {x!r} has unknown color {c!r}")
            color[x] = c
        lc = [0] * n
        uc = [0] * n
        cover_list = []
        for pair in covers:
            x, y = tuple(pair)
            if x not in index or y not in index:
                raise PosetError(f"cover ({x!r}, {y!r}) uses an undeclared element")
            i, j = index[x], index[y]
            if i == j:
                raise PosetError(f"cover ({x!r}, {x!r}) is a loop")
            if uc[i] >> j & 1:
                raise PosetError(f"duplicate cover ({x!r}, {y!r})")
            uc[i] |= 1 << j
            lc[j] |= 1 << i
            cover_list.append((x, y))

        # Kahn's algorithm; a leftover element means a cycle
        indeg = [lc[j].bit_count() for j in range(n)]
        order = [j for j in range(n) if indeg[j] == 0]
        k = 0
        while k < len(order):
            i = order[k]
            k += 1
            for j in _bits(uc[i]):
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
        if len(order) != n:
            stuck = [elements[j] for j in range(n) if indeg[j] > 0]
            raise PosetError(f"cover relation has a cycle through {stuck!r}")

        up = [0] * n
        for i in reversed(order):
            m = 0
            for j in _bits(uc[i]):
                m |= (1 << j) | up[j]
            up[i] = m
        for i in range(n):
            for j in _bits(uc[i]):
                for j2 in _bits(uc[i] & ~(1 << j)):
                    if up[j2] >> j & 1:
                        raise PosetError(
                            f"cover ({elements[i]!r}, {elements[j]!r}) is implied by "
                            f"a longer chain through {elements[j2]!r}; covers must "
                            "be transitively reduced"
                        )
        down = [0] * n
        for i in range(n):
            for j in _bits(up[i]):
                down[j] |= 1 << i

        cmask = {c: 0 for c in graph.colors}
        for i, x in enumerate(elements):
            cmask[color[x]] |= 1 << i

        self.graph = graph
        self.elements = elements
        self.index = index
        self.color = color
        self.covers = tuple(cover_list)
        self.n = n
        self.full = (1 << n) - 1
        # bitmask tables: strictly above / below, upper / lower covers
        self.up_mask = up
        self.down_mask = down
        self.upper_cover_mask = uc
        self.lower_cover_mask = lc
        self.color_mask = cmask
        self.topological_order = tuple(order)
        self._dual = None
        self._ec = None

    # -- basic queries ---------------------------------------------------

    def __repr__(self):
        return f"FinitePoset(n={self.n}, colors={list(self.graph.colors)!r})"

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        return (
            isinstance(other, FinitePoset)
            and self.graph == other.graph
            and self.elements == other.elements
            and self.color == other.color
            and set(self.covers) == set(other.covers)
        )

    def __hash__(self):
        return hash((self.graph, self.elements, frozenset(self.covers)))

    def _i(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise PosetError(f"unknown element {x!r}") from None

    def color_of(self, x):
        return self.color[self.elements[self._i(x)]]

    def elements_of_color(self, a):
        if a not in self.graph:
            raise PosetError(f"unknown color {a!r}")
        return [self.elements[i] for i in _bits(self.color_mask[a])]

    def mask(self, xs):
        m = 0
        for x in xs:
            m |= 1 << self._i(x)
        return m

    def ids(self, mask):
        return [self.elements[i] for i in _bits(mask)]

    def less(self, x, y):
        return bool(self.up_mask[self._i(x)] >> self._i(y) & 1)

    def leq(self, x, y):
        return x == y and x in self.index or self.less(x, y)

    def comparable(self, x, y):
        i, j = self._i(x), self._i(y)
        return i == j or bool(self.up_mask[i] >> j & 1) or bool(self.up_mask[j] >> i & 1)

    def is_cover(self, x, y):
        return bool(self.upper_cover_mask[self._i(x)] >> self._i(y) & 1)

    def open_interval(self, x, y):
        i, j = self._i(x), self._i(y)
        if not self.up_mask[i] >> j & 1:
            raise PosetError(f"{x!r} is not strictly below {y!r}")
        return set(self.ids(self.up_mask[i] & self.down_mask[j]))

    def consecutive_pairs(self, a):
        """Pairs ``x < y`` of color ``a`` with no color-``a`` element between."""
        cm = self.color_mask.get(a)
        if cm is None:
            raise PosetError(f"unknown color {a!r}")
        out = []
        for i in _bits(cm):
            for j in _bits(self.up_mask[i] & cm):
                if not (self.up_mask[i] & self.down_mask[j] & cm):
                    out.append((self.elements[i], self.elements[j]))
        return out

    def minimal_elements(self):
        return [self.elements[i] for i in range(self.n) if not self.lower_cover_mask[i]]

    def maximal_elements(self):
        return [self.elements[i] for i in range(self.n) if not self.upper_cover_mask[i]]

    def dual(self):
        """The order dual; colors are preserved."""
        if self._dual is None:
            d = FinitePoset(
                self.graph, self.elements, self.color, [(y, x) for x, y in self.covers]
            )
            d._dual = self
            self._dual = d
        return self._dual

    def is_ec(self):
        """Whether elements of equal color are pairwise comparable (cached)."""
        if self._ec is None:
            ok = True
            for cm in self.color_mask.values():
                for i in _bits(cm):
                    if (cm & ~(1 << i)) & ~(self.up_mask[i] | self.down_mask[i]):
                        ok = False
                        break
                if not ok:
                    break
            self._ec = ok
        return self._ec

    # -- splits (ideal bitmasks) ------------------------------------------

    def is_ideal(self, s):
        if s & ~self.full:
            return False
        for i in _bits(s):
            if self.down_mask[i] & ~s:
                return False
        return True

    def split_from_ideal(self, xs):
        s = self.mask(xs)
        if not self.is_ideal(s):
            raise PosetError(f"{sorted(map(str, xs))} is not an ideal")
        return s

    def ideal_of(self, s):
        return frozenset(self.ids(s))

    def filter_of(self, s):
        return frozenset(self.ids(self.full & ~s))

    def bottom_split(self):
        """The split ``(P, {})``."""
        return 0

    def top_split(self):
        """The split ``({}, P)``."""
        return self.full

    def dual_split(self, s):
        return self.full & ~s

    def check_split(self, s):
        if not isinstance(s, int) or not self.is_ideal(s):
            raise PosetError(f"{s!r} is not the bitmask of an ideal")

    def min_filter(self, s):
        """Minimal elements of the filter of split ``s``."""
        lc = self.lower_cover_mask
        return [self.elements[i] for i in _bits(self.full & ~s) if not lc[i] & ~s]

    def max_ideal(self, s):
        """Maximal elements of the ideal of split ``s``."""
        uc = self.upper_cover_mask
        return [self.elements[i] for i in _bits(s) if not uc[i] & s]

    def transfer_down(self, s, x):
        """``(F - x, I + x)``: move a minimal filter element into the ideal."""
        return s | (1 << self._i(x))

    def transfer_up(self, s, y):
        """``(F + y, I - y)``: move a maximal ideal element into the filter."""
        return s & ~(1 << self._i(y))

    def component_key(self, s):
        return 0

    def same_component(self, s, t):
        return True

    def delta(self, b, s2, s1):
        """Signed net number of color-``b`` elements moved into the ideal."""
        cm = self.color_mask[b]
        return (cm & s2 & ~s1).bit_count() - (cm & s1 & ~s2).bit_count()

    # -- census primitives used by the weight functions --------------------

    def ideal_meets(self, s, b):
        return bool(s & self.color_mask[b])

    def filter_meets(self, s, b):
        return bool(self.full & ~s & self.color_mask[b])

    def max_in_ideal(self, s, b):
        """The maximum of ``P_b`` within the ideal, or ``None`` when empty."""
        m = s & self.color_mask[b]
        tops = [i for i in _bits(m) if not self.up_mask[i] & m]
        if len(tops) > 1:
            raise RefusedError(f"color {b!r} has several maximal elements in the ideal (EC fails)")
        return self.elements[tops[0]] if tops else None

    def min_in_filter(self, s, b):
        m = self.full & ~s & self.color_mask[b]
        bots = [i for i in _bits(m) if not self.down_mask[i] & m]
        if len(bots) > 1:
            raise RefusedError(f"color {b!r} has several minimal elements in the filter (EC fails)")
        return self.elements[bots[0]] if bots else None

    def greater_in_ideal(self, s, y, c):
        """Elements of color ``c`` in the ideal strictly above ``y`` (never infinite)."""
        return self.ids(self.up_mask[self._i(y)] & s & self.color_mask[c])

    def less_in_filter(self, s, y, c):
        return self.ids(self.down_mask[self._i(y)] & ~s & self.full & self.color_mask[c])


def build_poset(graph, elements, covers, restrict_colors=False):
    """Validate and build a :class:`FinitePoset`.

    ``elements`` is a sequence of ``(id, color)`` pairs.  Unless
    ``restrict_colors`` is set, every color of ``graph`` must be used; with it
    the graph is shrunk to the colors actually present.
    """
    ids = []
    colors = {}
    for item in elements:
        x, c = item
        if x in colors:
            raise PosetError(f"duplicate element {x!r}")
        if c not in graph:
            raise PosetError(f"element {x!r} has unknown color {c!r}")
        ids.append(x)
        colors[x] = c
    used = set(colors.values())
    missing = [c for c in graph.colors if c not in used]
    if missing:
        if not restrict_colors:
            raise PosetError(f"coloring is not surjective: colors {missing!r} unused")
        graph = graph.restrict(used)
    return FinitePoset(graph, ids, colors, covers)


def comparable(P, x, y):
    return P.comparable(x, y)


def open_interval(P, x, y):
    return P.open_interval(x, y)


def consecutive_pairs(P, a):
    return P.consecutive_pairs(a)
