"""Split lattices: enumeration, colored Hasse edges, components, and Delta counts.

For a finite poset every split is enumerated into a :class:`SplitLattice`.
Infinite posets never get a global lattice; :class:`LazyNavigator` serves the
same raise/lower queries on demand, one split at a time.
"""

from __future__ import annotations

import os
from collections import deque

from .errors import CapacityError, SplitError

__all__ = [
    "DEFAULT_SPLIT_CAP",
    "split_cap",
    "SplitLattice",
    "LazyNavigator",
    "navigator",
    "enumerate_splits",
    "colored_edges",
    "components",
    "delta",
]

DEFAULT_SPLIT_CAP = 1_000_000


def split_cap(cap=None):
    """The effective split cap: ``cap``, else ``$HEAPLAB_SPLIT_CAP``, else the default."""
    if cap is None:
        env = os.environ.get("HEAPLAB_SPLIT_CAP")
        cap = int(env) if env else DEFAULT_SPLIT_CAP
    if cap < 1:
        raise ValueError(f"split cap must be positive, got {cap}")
    return cap


class SplitLattice:
    """All splits of a finite poset with their colored Hasse edges.

    Splits are ideal bitmasks, listed in increasing integer order.  An edge
    ``(i, j, color)`` goes from ``splits[i]`` up to ``splits[j]``.
    """

    def __init__(self, poset, splits):
        self.poset = poset
        self.splits = sorted(splits)
        self.index = {s: i for i, s in enumerate(self.splits)}
        self._up = {}
        self._down = {}
        edges = []
        for i, s in enumerate(self.splits):
            ups = {}
            for x in poset.min_filter(s):
                t = poset.transfer_down(s, x)
                c = poset.color_of(x)
                ups.setdefault(c, []).append(t)
                self._down.setdefault(t, {}).setdefault(c, []).append(s)
                edges.append((i, self.index[t], c))
            self._up[s] = ups
        edges.sort()
        self.edges = edges
        self._component = None

    def __len__(self):
        return len(self.splits)

    def __iter__(self):
        return iter(self.splits)

    def __contains__(self, s):
        return s in self.index

    def __repr__(self):
        return f"SplitLattice(splits={len(self.splits)}, edges={len(self.edges)})"

    @property
    def graph(self):
        return self.poset.graph

    def ideal(self, s):
        return self.poset.ideal_of(s)

    def raise_(self, s, a):
        """Targets of the color-``a`` edges going up from ``s``."""
        return self._up[s].get(a, ())

    def lower(self, s, a):
        """Targets of the color-``a`` edges going down from ``s``."""
        d = self._down.get(s)
        return d.get(a, ()) if d else ()

    def neighbors(self, s):
        out = []
        for c, ts in self._up[s].items():
            out.extend((c, "up", t) for t in ts)
        for c, ts in self._down.get(s, {}).items():
            out.extend((c, "down", t) for t in ts)
        return out

    def component_of(self, s):
        if self._component is None:
            self._component = _label_components(self.splits, self.neighbors)
        return self._component[s]

    def component_ids(self):
        if self._component is None:
            self._component = _label_components(self.splits, self.neighbors)
        return dict(self._component)

    def to_json(self):
        P = self.poset
        return {
            "splits": [{"ideal": [_jsonable(x) for x in P.ids(s)]} for s in self.splits],
            "edges": [{"from": i, "to": j, "color": c} for i, j, c in self.edges],
        }

    def to_dot(self, name="splits"):
        P = self.poset
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, s in enumerate(self.splits):
            label = ",".join(str(x) for x in P.ids(s)) or "{}"
            lines.append(f'  n{i} [label="{label}"];')
        for i, j, c in self.edges:
            lines.append(f'  n{i} -> n{j} [label="{c}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, poset, data):
        """Rebuild a lattice from :meth:`to_json` output, checking the edges."""
        key = {str(x): x for x in poset.elements}
        splits = []
        for row in data["splits"]:
            s = poset.mask(key[str(x)] for x in row["ideal"])
            poset.check_split(s)
            splits.append(s)
        L = cls(poset, splits)
        got = [{"from": i, "to": j, "color": c} for i, j, c in L.edges]
        if got != data["edges"] or [L.splits[i] for i in range(len(splits))] != splits:
            raise SplitError("edge list does not match the splits")
        return L


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


def _label_components(nodes, neighbors):
    comp = {}
    k = 0
    for s in nodes:
        if s in comp:
            continue
        comp[s] = k
        todo = deque([s])
        while todo:
            t = todo.popleft()
            for _, _, u in neighbors(t):
                if u not in comp:
                    comp[u] = k
                    todo.append(u)
        k += 1
    return comp


class LazyNavigator:
    """Raise/lower queries for any split space, memoized per split."""

    def __init__(self, space):
        self.space = space
        self.graph = space.graph
        self._up = {}
        self._down = {}

    def _ups(self, s):
        d = self._up.get(s)
        if d is None:
            sp = self.space
            d = {}
            for x in sp.min_filter(s):
                d.setdefault(sp.color_of(x), []).append(sp.transfer_down(s, x))
            self._up[s] = d
        return d

    def _downs(self, s):
        d = self._down.get(s)
        if d is None:
            sp = self.space
            d = {}
            for y in sp.max_ideal(s):
                d.setdefault(sp.color_of(y), []).append(sp.transfer_up(s, y))
            self._down[s] = d
        return d

    def raise_(self, s, a):
        return self._ups(s).get(a, ())

    def lower(self, s, a):
        return self._downs(s).get(a, ())

    def neighbors(self, s):
        out = []
        for c, ts in self._ups(s).items():
            out.extend((c, "up", t) for t in ts)
        for c, ts in self._downs(s).items():
            out.extend((c, "down", t) for t in ts)
        return out


def navigator(space):
    """A raise/lower provider: lattices serve themselves, anything else goes lazy."""
    if isinstance(space, (SplitLattice, LazyNavigator)):
        return space
    return LazyNavigator(space)


def enumerate_splits(P, cap=None):
    """All splits of the finite poset ``P``, by BFS from the empty ideal."""
    cap = split_cap(cap)
    seen = {0}
    todo = deque([0])
    while todo:
        s = todo.popleft()
        for x in P.min_filter(s):
            t = P.transfer_down(s, x)
            if t not in seen:
                seen.add(t)
                if len(seen) > cap:
                    raise CapacityError(cap)
                todo.append(t)
    return SplitLattice(P, seen)


def colored_edges(L):
    """Hasse edges as ``(lower split, upper split, color)`` triples."""
    return [(L.splits[i], L.splits[j], c) for i, j, c in L.edges]


def components(L, seeds=None, radius=8):
    """Partition of splits into components.

    For a :class:`SplitLattice` this is the connected-component labelling of
    its Hasse graph, returned as a list of split lists.  For periodic heaps the
    components are classified exactly by sentinel pattern; one certificate per
    component is returned (see :func:`heaplab.periodic.heap_components`), and
    ``seeds`` are checked against it by a ball of ``radius``.
    """
    if isinstance(L, SplitLattice):
        comp = L.component_ids()
        groups = {}
        for s in L.splits:
            groups.setdefault(comp[s], []).append(s)
        return [groups[k] for k in sorted(groups)]
    from .periodic import ball, heap_components

    certs = heap_components(L)
    for s in seeds or ():
        for t in ball(L, s, radius):
            if not L.same_component(s, t):
                raise SplitError("a Hasse path left its sentinel pattern")
    return certs


def delta(space, b, s2, s1):
    """``Delta_b[s2, s1]``: net color-``b`` elements moved into the ideal."""
    sp = space.poset if isinstance(space, SplitLattice) else space
    return sp.delta(b, s2, s1)
