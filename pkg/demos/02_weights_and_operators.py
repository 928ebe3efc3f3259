"""Census weights, diagonal operators and the relations they satisfy."""

# %%
from heaplab import (
    build_representation,
    check_minuscule_conditions,
    eigenvalue_set,
    enumerate_splits,
    is_edge_weight,
    load_fixture,
    mu_weights,
    tabulate,
    verify_relations,
)

P = load_fixture("fig2")
L = enumerate_splits(P)

# %% mu is read off local structure: counts of adjacent colors above the top
# element of each color in the ideal (or below the bottom one in the filter)
mu = tabulate(mu_weights(P), L)
print("mu at the empty ideal:", {a: mu.value(a, 0) for a in P.graph.colors})
print("values taken:", sorted(eigenvalue_set(mu, L)))
print("edge law holds:", is_edge_weight(mu, L).holds)

# %% The upper Borel relations all hold with these diagonal operators
for r in verify_relations(L, ["XX", "HH", "HX"], mu):
    assert r.holds
print("upper conditions:", check_minuscule_conditions(mu, L, "upper").holds)

# %% The full algebra fails: [X_d, Y_d] and H_d differ at the empty ideal
rep = build_representation(P, "g-prime", L)
for r in rep.failures():
    print(r.to_json())

# %% The dual poset swaps the roles of X and Y
rep_dual = build_representation(P.dual(), "b-minus")
print("lower representation on the dual:", rep_dual.holds)
