"""Instance file parsing and serialization."""

import json

import pytest

from heaplab import InputError, LegPoset, PeriodicHeap, load_instance, parse_instance
from heaplab.io import FIXTURES, fixture_path, instance_to_json, load_fixture


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_round_trip(name):
    P = load_fixture(name)
    data = instance_to_json(P)
    assert instance_to_json(parse_instance(data)) == data
    assert json.load(open(fixture_path(name))) == data


def test_fixture_kinds(fig1, fig3, zchain):
    assert isinstance(fig1, PeriodicHeap) and isinstance(zchain, PeriodicHeap)
    assert isinstance(fig3, LegPoset)


def test_missing_file():
    with pytest.raises(InputError, match="missing.json"):
        load_instance("missing.json")


def test_bad_json_reports_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"graph":\n  {"colors": [}\n}')
    with pytest.raises(InputError, match="line 2"):
        load_instance(p)


@pytest.mark.parametrize("data,field", [
    ({}, "graph"),
    ({"graph": {"colors": ["a"]}}, "poset"),
    ({"graph": {"colors": ["a"]}, "poset": {"elements": [{"id": "x"}]}}, r"elements\[0\]"),
    ({"graph": {"colors": ["a"], "edges": [["a"]]}, "poset": {"elements": []}}, r"edges\[0\]"),
    ({"graph": {"colors": ["a"]}, "poset": {"elements": [{"id": "x", "color": "q"}]}},
     "unknown color"),
    ({"graph": {"colors": ["a"]}, "heap": {"cells": [{"id": "c", "color": "a"}],
                                          "covers": [{"from": "c", "to": "c", "shift": 0}]}},
     "cycle"),
])
def test_field_context_in_errors(data, field):
    with pytest.raises(InputError, match=field):
        parse_instance(data)
