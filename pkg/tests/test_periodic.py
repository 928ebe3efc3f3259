"""Periodic heaps, level windows, split balls and leg posets."""

import math

import pytest

from heaplab import (
    ColorGraph,
    FinitePoset,
    PosetError,
    build_heap,
    compute_upsilon,
    components,
    heap_components,
    materialize_window,
)
from heaplab.io import split_from_json, split_to_json
from heaplab.periodic import ball, split_neighbors


def test_fig1_heap_shape(fig1):
    assert len(fig1.cells) == 12
    assert fig1.is_ec()
    assert fig1.max_level_step == 1
    # one period is one level: every cell appears once per level
    x = ("j", 0)
    assert fig1.less(x, ("j", 1)) and not fig1.less(("j", 1), x)


def test_zero_and_negative_cycles_rejected():
    G = ColorGraph("a")
    with pytest.raises(PosetError):
        build_heap(G, [("c", "a")], [("c", "c", 0)])
    with pytest.raises(PosetError):
        build_heap(G, [("c", "a")], [("c", "c", -1)])


def test_zchain_has_three_components(zchain):
    comps = heap_components(zchain)
    assert len(comps) == 3
    patterns = sorted(tuple(p.values()) for p, _ in comps)
    assert patterns == [(-1,), (0,), (1,)]
    assert len(components(zchain, seeds=[zchain.split({"c": 0})], radius=5)) == 3


def test_zchain_sentinel_splits_are_isolated(zchain):
    assert split_neighbors(zchain, zchain.bottom_split()) == []
    assert split_neighbors(zchain, zchain.top_split()) == []
    assert len(ball(zchain, zchain.split({"c": 0}), 2)) == 5


@pytest.mark.parametrize("W", [1, 2, 3, 4])
def test_windows_are_valid_convex_posets(fig1, W):
    win = materialize_window(fig1, 0, W - 1)
    assert isinstance(win.poset, FinitePoset)
    assert win.poset.n == 12 * W
    E = win.poset.elements
    for x in E:
        for y in E:
            assert win.poset.less(x, y) == fig1.less(x, y)


def test_split_json_round_trip(fig1):
    s = fig1.level_split(2)
    assert split_from_json(fig1, split_to_json(fig1, s)) == s
    top = fig1.top_split()
    assert split_to_json(fig1, top)["frontier"]["i"] == "inf"
    assert split_from_json(fig1, split_to_json(fig1, top)) == top


def test_dual_split_is_involution(fig1):
    s = fig1.level_split(0)
    assert fig1.dual_split(fig1.dual_split(s)) == s
    assert math.isinf(fig1.dual_split(fig1.top_split())[0])


def test_fig3_upsilon(fig3):
    s = fig3.split(["g"], {"L": 1, "R": "inf"})
    assert [compute_upsilon(fig3, b, s) for b in "dga"] == [1, 2, 0]
    assert fig3.is_ec()
