# ---
# jupyter:
#   jupytext:
#     formats: py:light
# ---

# ### Success probability against noise rate
#
# A small sweep over gamma for the three channels, averaged over a handful of
# 6-vertex instances. Nothing is written to disk (`write=False`). Expect a
# couple of minutes on one core.

import numpy as np

from noisyqa.experiments import ExperimentConfig, sweep_gamma

cfg = ExperimentConfig(
    n=6, instances=5,
    channels=("phase_flip", "bit_flip", "depolarizing"),
    gammas=(0.0, 0.01, 0.1),
    ground_fidelity=False,
)
rows = sweep_gamma(cfg, write=False)

# One line per (method, channel): mean success at each gamma.

for m in cfg.methods:
    for ch in cfg.channels:
        cell = [r for r in rows if r["method"] == m and r["channel"] == ch]
        line = "  ".join(f"g={r['gamma']:<5g} {r['mean']:.3f}" for r in cell)
        print(f"{m} {ch:<13s} {line}")

# CQA's noiseless edge is gone by gamma = 0.01. Bit flips and depolarizing
# noise push it out of its sector. Phase flips keep it inside but still
# dephase the superposition it relies on.
