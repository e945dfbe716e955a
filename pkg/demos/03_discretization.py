"""The two discretization mechanisms.

Decision rounding: per-variable decimal places adapt to the population
spread (coarse while exploring, fine once converged). Objective gridding:
normalized objectives are rounded to two decimals, which can collapse
non-dominated vectors into dominated ones and thereby restore selection
pressure.
"""

import numpy as np

from emodisc import (
    DiscretizationConfig,
    compute_resolution,
    discretize_decision,
    discretize_objectives,
    dominates,
    normalize_objectives,
)

cfg = DiscretizationConfig(strategy="bd")  # d_min=2, d_max=8, 2 objective decimals

# --- decision side -------------------------------------------------------
gen = np.random.Generator(np.random.PCG64(7))
bounds = (np.zeros(4), np.ones(4))

spread_out = gen.random((60, 4))                     # fresh random population
converged = 0.5 + 0.001 * gen.standard_normal((60, 4))

for label, X in [("spread-out", spread_out), ("converged", converged)]:
    profile = compute_resolution(X, bounds, cfg)
    print(f"{label}: sigma = {np.round(profile.sigmas, 4)} -> decimals = {profile.decimals}")

profile = compute_resolution(spread_out, bounds, cfg)
x = np.array([0.123456, 0.777777, 0.5, 0.999999])
print("rounded decision:", discretize_decision(x, profile, bounds))

# --- objective side ------------------------------------------------------
# two five-objective vectors that are mutually non-dominated in raw form
raw = np.array([
    [450.0, 523.0, 651.0, 733.0, 869.0],
    [453.0, 510.0, 621.0, 703.0, 870.0],
])
print("\nraw vectors non-dominated both ways:",
      not dominates(raw[0], raw[1]) and not dominates(raw[1], raw[0]))

gridded = discretize_objectives(raw / 1000.0, cfg.objective_decimals)
print("after 2-digit gridding:")
print(gridded)
print("second now dominates first:", dominates(gridded[1], gridded[0]))

# population min-max normalization is what the optimizer itself uses
pop_objectives = gen.random((8, 3)) * np.array([100.0, 10.0, 1.0])
normalized = normalize_objectives(pop_objectives)
print("\nnormalized column ranges:", normalized.min(axis=0), normalized.max(axis=0))
