"""Two-sided checks: each characterization evaluated combinatorially and algebraically."""

# %%
import json

from heaplab import instance_generator, run_harness, verify_equivalences
from heaplab.io import poset_to_json

# %% One instance, row by row
G, P = next(instance_generator(4, 2, "random", seed=3))
print(json.dumps(poset_to_json(P)))
for row in verify_equivalences(P).rows:
    print(f"{row['theorem']:<28} agree={row['agree']}  {row['sides']}")

# %% Every poset on three elements with at most two colors
summary = run_harness(3, 2, "exhaustive")
print(summary["instances"], "instances,", summary["disagreements"], "disagreements")
for name, (agree, disagree, all_true) in summary["agreements"].items():
    print(f"{name:<28} {agree:>4} agree  {all_true:>4} with every side true")

# %% A seeded random sweep; the same seed always gives the same summary
print(run_harness(6, 3, "random", seed=11, count=200)["disagreements"])
