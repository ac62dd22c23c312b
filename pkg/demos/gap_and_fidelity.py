# ---
# jupyter:
#   jupytext:
#     formats: py:light
# ---

# ### Minimum gap and noiseless success
#
# CQA diagonalizes only inside the constraint sector, PQA in the full space.
# This compares the two minimum gaps per instance with the two noiseless
# success probabilities.

import numpy as np

import noisyqa as nq
from noisyqa.experiments import ExperimentConfig, gap_vs_fidelity

g = nq.random_graph(6, seed=1)
sector = nq.enumerate_sector(6)
pqa = nq.gap_scan(nq.make_schedule(nq.MethodConfig("PQA"), g))
cqa = nq.gap_scan(nq.make_schedule(nq.MethodConfig("CQA"), g), sector=sector)
print(f"PQA min gap {pqa.min_gap:.4f} at s={pqa.argmin_fraction:.2f} (dim {pqa.dim})")
print(f"CQA min gap {cqa.min_gap:.4f} at s={cqa.argmin_fraction:.2f} (dim {cqa.dim})")

# Over a few instances: rows hold both ratios, "undefined" when a gap cannot
# be formed (a fully degenerate final spectrum).

rows = gap_vs_fidelity(ExperimentConfig(n=6, instances=8, ground_fidelity=False), write=False)
for r in rows:
    print(r)

ratios = np.array([(r["gap_ratio"], r["fidelity_ratio"]) for r in rows
                   if "undefined" not in (r["gap_ratio"], r["fidelity_ratio"])], dtype=float)
if len(ratios) > 2:
    print("corr(gap ratio, fidelity ratio) =", np.corrcoef(ratios.T)[0, 1].round(3))
