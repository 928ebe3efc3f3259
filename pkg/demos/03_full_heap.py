"""An infinite periodic heap: windows, split balls and interior certificates."""

# %%
from heaplab import build_representation, check_all, load_fixture, materialize_window
from heaplab.periodic import ball

H = load_fixture("fig1")
print(H, "max level step:", H.max_level_step)

# %% Elements are (cell, n); one period of the heap is one level
print(H.less(("j", 0), ("j", 1)), H.level(("j", 0)))

# %% Properties are decided on level windows of 3 and 4 periods
for r in check_all(H, window=3):
    print(r.property, r.holds, r.notes)

# %% A finite window is an ordinary colored poset
win = materialize_window(H, 0, 2)
print(win.poset, len(win.boundary), "boundary elements")

# %% Splits are frontiers; a ball holds the splits a few Hasse steps away
s0 = H.level_split(0)
B = ball(H, s0, 4)
print(len(B), "splits within 4 steps of the level split")

# %% Relations are certified only where every word stays inside the ball
for R in (4, 6, 8):
    rep = build_representation(H, "g-prime", seed=s0, radius=R)
    print(R, rep.holds, rep.scope, sorted(rep.eigenvalues))

# %% The integer chain has three components: empty ideal, everything, the rest
from heaplab import heap_components

for pattern, rep_split in heap_components(load_fixture("zchain")):
    print(pattern, rep_split)
