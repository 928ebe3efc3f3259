"""A colored poset, its split lattice, and the eight coloring properties."""

# %% Load the bundled six-element fixture colored by a D5 diagram
from heaplab import check_all, classify_poset, enumerate_splits, load_fixture

P = load_fixture("fig2")
print(P)
print("colors:", P.graph.colors, "edges:", P.graph.edge_list())

# %% Enumerate every split (F, I); a split is stored as its ideal
L = enumerate_splits(P)
print(len(L), "splits,", len(L.edges), "colored Hasse edges")
for i, s in enumerate(L.splits[:5]):
    print(i, sorted(P.ideal_of(s)))

# %% Edges are colored by the element that crosses from the filter into the ideal
for i, j, color in L.edges[:6]:
    print(sorted(P.ideal_of(L.splits[i])), f"--{color}->", sorted(P.ideal_of(L.splits[j])))

# %% The properties; the first violation comes with a witness
for r in check_all(P):
    print(r.to_json())

# %% d-complete needs EC, NA, AC, I2A and Mx1GA; minuscule adds Mn1LA
c = classify_poset(P)
print("d-complete:", c.d_complete, " minuscule:", c.minuscule)

# %% The lattice exports to DOT (edge label = color) and to JSON
print(L.to_dot()[:200])
