"""The DTLZ and WFG benchmark families.

Shows how to build problem instances at the experiment sizes, evaluate
points, and sample the known Pareto-optimal sets (the basis for reference
fronts).
"""

import numpy as np

from emodisc import PROBLEM_NAMES, RandomSource, evaluate, make_problem, sample_pareto_set

# every family at the standard 3-objective size
for name in PROBLEM_NAMES:
    spec = make_problem(name, M=3, n=7)
    mid = (spec.lower + spec.upper) / 2.0
    print(f"{name}: bounds [{spec.lower[0]:.0f}, {spec.upper[-1]:.0f}], f(mid) = {np.round(evaluate(spec, mid), 4)}")

# DTLZ2's optimal set evaluates onto the unit sphere
spec = make_problem("dtlz2", M=3, n=7)
X = sample_pareto_set(spec, 5, RandomSource(42))
F = evaluate(spec, X)
print("\nDTLZ2 optimal samples, sum of squares (should be 1):", np.round((F**2).sum(axis=1), 12))

# DTLZ1's optimal set lies on the plane sum(f) = 0.5
spec = make_problem("dtlz1", M=3, n=7)
F = evaluate(spec, sample_pareto_set(spec, 5, RandomSource(43)))
print("DTLZ1 optimal samples, sum (should be 0.5):", np.round(F.sum(axis=1), 12))

# sizes scale to the many-objective and large-scale settings
big = make_problem("wfg4", M=10, n=1000)
print(f"\nwfg4 at M=10, n=1000: position parameters k={big.position_count}, "
      f"upper bound of last variable = {big.upper[-1]:.0f}")
