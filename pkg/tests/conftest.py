import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from heaplab import ColorGraph, build_poset, load_fixture  # noqa: E402


@pytest.fixture(scope="session")
def fig2():
    return load_fixture("fig2")


@pytest.fixture(scope="session")
def fig1():
    return load_fixture("fig1")


@pytest.fixture(scope="session")
def fig3():
    return load_fixture("fig3")


@pytest.fixture(scope="session")
def zchain():
    return load_fixture("zchain")


def chain(colors, edges=()):
    """A chain whose elements carry ``colors`` from bottom to top."""
    G = ColorGraph(sorted(set(colors)), edges)
    elems = [(f"x{i}", c) for i, c in enumerate(colors)]
    cov = [(f"x{i}", f"x{i + 1}") for i in range(len(colors) - 1)]
    return build_poset(G, elems, cov)
