"""Colored posets, their split lattices, and the color operators acting on them.

The main entry points::

    from heaplab import load_fixture, enumerate_splits, classify_poset

    P = load_fixture("fig2")
    L = enumerate_splits(P)
    classify_poset(P).d_complete
"""

from .classify import (
    AlgebraKind,
    ClassificationReport,
    EquivalenceReport,
    RepresentationReport,
    build_representation,
    classify_poset,
    duality_checks,
    instance_generator,
    nilpotency_guard,
    run_harness,
    verify_equivalences,
)
from .errors import (
    CapacityError,
    HeaplabError,
    InputError,
    PosetError,
    RefusedError,
    SplitError,
)
from .io import instance_to_json, load_fixture, load_instance, parse_instance
from .operators import (
    Operators,
    RelationReport,
    SplitVector,
    apply_X,
    apply_Y,
    check_square_nilpotent,
    check_XY_cross,
    interior_splits,
    operator_matrix,
    verify_relations,
)
from .periodic import (
    INF,
    Leg,
    LegPoset,
    PeriodicHeap,
    ball,
    build_heap,
    heap_components,
    materialize_window,
)
from .poset import ColorGraph, FinitePoset, build_poset
from .properties import PropertyReport, check_all, check_property
from .splits import SplitLattice, components, delta, enumerate_splits
from .weights import (
    WeightFunction,
    WeightReport,
    check_minuscule_conditions,
    compute_mu,
    compute_psi,
    compute_upsilon,
    construct_weight,
    eigenvalue_set,
    is_component_weight,
    is_edge_weight,
    mu_weights,
    solve_edge_weight,
    tabulate,
    uniqueness_probe,
)

__version__ = "0.1.0"
