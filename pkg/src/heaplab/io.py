"""JSON input and output for colored posets, periodic heaps, leg posets and splits.

Three instance formats share a ``graph`` block::

    {"graph": {"colors": ["a", "b"], "edges": [["a", "b"]]},
     "poset": {"elements": [{"id": "u", "color": "a"}], "covers": [["u", "x"]]}}

    {"graph": ..., "heap": {"cells": [{"id": "c1", "color": "g"}],
                            "covers": [{"from": "c1", "to": "c2", "shift": 0}]}}

    {"graph": ..., "legposet": {"core": {"elements": [...], "covers": [...]},
                                "legs": [{"name": "L", "attach": "g",
                                          "direction": "up", "colors": ["a", "b"]}]}}

Heap splits are written as ``{"frontier": {"c1": 0, "c2": "inf"}}``.
"""

from __future__ import annotations

import json
from importlib import resources

from .errors import HeaplabError, InputError
from .periodic import INF, Leg, LegPoset, PeriodicHeap, build_heap
from .poset import ColorGraph, FinitePoset, build_poset

__all__ = [
    "load_instance",
    "parse_instance",
    "poset_to_json",
    "instance_to_json",
    "split_to_json",
    "split_from_json",
    "fixture_path",
    "load_fixture",
    "FIXTURES",
]

FIXTURES = ("fig1", "fig2", "fig3", "zchain")


def _field(d, key, where):
    if not isinstance(d, dict):
        raise InputError(f"{where}: expected an object, got {type(d).__name__}")
    if key not in d:
        raise InputError(f"{where}: missing field {key!r}")
    return d[key]


def _list(d, key, where):
    v = _field(d, key, where)
    if not isinstance(v, list):
        raise InputError(f"{where}.{key}: expected a list")
    return v


def _graph(data):
    g = _field(data, "graph", "instance")
    colors = _list(g, "colors", "graph")
    edges = g.get("edges", [])
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise InputError(f"graph.edges[{i}]: expected a pair of colors")
    try:
        return ColorGraph(colors, [tuple(e) for e in edges])
    except HeaplabError as exc:
        raise InputError(f"graph: {exc}") from None


def _elements(block, where):
    out = []
    for i, e in enumerate(_list(block, "elements", where)):
        out.append((_field(e, "id", f"{where}.elements[{i}]"),
                    _field(e, "color", f"{where}.elements[{i}]")))
    return out


def _pair_covers(block, where):
    out = []
    for i, c in enumerate(block.get("covers", [])):
        if not isinstance(c, list) or len(c) != 2:
            raise InputError(f"{where}.covers[{i}]: expected a pair of ids")
        out.append(tuple(c))
    return out


def parse_instance(data):
    """Build a :class:`FinitePoset`, :class:`PeriodicHeap` or :class:`LegPoset`."""
    G = _graph(data)
    try:
        if "poset" in data:
            p = data["poset"]
            return build_poset(G, _elements(p, "poset"), _pair_covers(p, "poset"))
        if "heap" in data:
            h = data["heap"]
            cells = []
            for i, c in enumerate(_list(h, "cells", "heap")):
                cells.append((_field(c, "id", f"heap.cells[{i}]"),
                              _field(c, "color", f"heap.cells[{i}]")))
            covers = []
            for i, c in enumerate(h.get("covers", [])):
                w = f"heap.covers[{i}]"
                covers.append((_field(c, "from", w), _field(c, "to", w), c.get("shift", 0)))
            return build_heap(G, cells, covers)
        if "legposet" in data:
            lp = data["legposet"]
            core = _field(lp, "core", "legposet")
            legs = []
            for i, lg in enumerate(_list(lp, "legs", "legposet")):
                w = f"legposet.legs[{i}]"
                legs.append(Leg(_field(lg, "name", w), lg.get("attach"),
                                _field(lg, "direction", w), tuple(_field(lg, "colors", w))))
            return LegPoset(G, _elements(core, "legposet.core"),
                            _pair_covers(core, "legposet.core"), legs)
    except InputError:
        raise
    except HeaplabError as exc:
        raise InputError(str(exc)) from None
    raise InputError("instance: expected one of 'poset', 'heap' or 'legposet'")


def load_instance(path):
    """Read an instance file; every failure becomes an :class:`InputError`."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_instance(data)


def _graph_json(G):
    return {"colors": list(G.colors), "edges": [list(e) for e in G.edge_list()]}


def poset_to_json(P):
    return {
        "graph": _graph_json(P.graph),
        "poset": {
            "elements": [{"id": x, "color": P.color[x]} for x in P.elements],
            "covers": [[x, y] for x, y in P.covers],
        },
    }


def instance_to_json(P):
    if isinstance(P, FinitePoset):
        return poset_to_json(P)
    if isinstance(P, PeriodicHeap):
        return {
            "graph": _graph_json(P.graph),
            "heap": {
                "cells": [{"id": c, "color": P.cell_color[c]} for c in P.cells],
                "covers": [{"from": u, "to": v, "shift": k} for u, v, k in P.covers],
            },
        }
    if isinstance(P, LegPoset):
        core = poset_to_json(P.core)["poset"]
        return {
            "graph": _graph_json(P.graph),
            "legposet": {
                "core": core,
                "legs": [{"name": lg.name, "attach": lg.attach, "direction": lg.direction,
                          "colors": list(lg.colors)} for lg in P.legs],
            },
        }
    raise HeaplabError(f"cannot serialize {type(P).__name__}")


def _cut_json(v):
    if v == INF:
        return "inf"
    if v == -INF:
        return "-inf"
    return v


def split_to_json(P, s):
    if isinstance(P, PeriodicHeap):
        return {"frontier": {c: _cut_json(v) for c, v in P.frontier(s).items()}}
    if isinstance(P, LegPoset):
        mask, cuts = s
        return {"ideal": P.core.ids(mask),
                "cuts": {lg.name: _cut_json(k) for lg, k in zip(P.legs, cuts)}}
    return {"ideal": P.ids(s)}


def split_from_json(P, data):
    try:
        if isinstance(P, PeriodicHeap):
            return P.split(_field(data, "frontier", "split"))
        if isinstance(P, LegPoset):
            return P.split(_field(data, "ideal", "split"), data.get("cuts", {}))
        s = P.mask(_field(data, "ideal", "split"))
        P.check_split(s)
        return s
    except InputError:
        raise
    except (HeaplabError, KeyError) as exc:
        raise InputError(f"split: {exc}") from None


def fixture_path(name):
    """Path of a bundled fixture such as ``"fig2"``."""
    if name not in FIXTURES:
        raise HeaplabError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return str(resources.files("heaplab") / "data" / f"{name}.json")


def load_fixture(name):
    return load_instance(fixture_path(name))
