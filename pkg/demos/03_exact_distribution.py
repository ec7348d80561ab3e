"""
Exact distribution at small times
=================================

Propagating probability over the counts (n+, n-) gives the full law of
x_t with no sampling error.  Its moments reproduce the closed forms.
"""
import numpy as np

from memwalk import Parameters, evolve_exact, exact_moments, mean_square_displacement
from memwalk.oracle import position_arrays

params = Parameters(0.5, 0.3, 0.2, s=0.5)
levels = evolve_exact(params, 30)

positions, probs = position_arrays(levels[-1])
print("P(x_30 = x):")
for x, pr in zip(positions, probs):
    if pr > 1e-4:
        print(f"  {x:+3d} {pr:.5f} " + "#" * int(400 * pr))

t = np.arange(1, 31)
dp = np.array([exact_moments(level)[1] for level in levels])
print("max relative gap to closed form:", np.max(np.abs(dp / mean_square_displacement(params, t) - 1)))
