"""
Exact moments
=============

Mean and mean square displacement in closed form, checked against the
step-by-step recursion, out to a million steps.
"""
import numpy as np

from memwalk import Parameters, mean_displacement, mean_square_displacement, variance_series
from memwalk.moments import msd_branch, second_moment_recursion

times = np.array([1, 10, 100, 10**4, 10**6])

for pqr in [(0.5, 0.3, 0.2), (0.8, 0.1, 0.1), (0.3, 0.1, 0.6), (0.4, 0.6, 0.0)]:
    params = Parameters(*pqr, s=1.0)
    series = variance_series(params, times)
    print(f"p, q, r = {pqr}  gamma = {params.gamma:+.2f}  branch = {msd_branch(params)}")
    for t, m, v in zip(times, series.mean, series.variance):
        print(f"  t = {t:>7}   <x> = {m:12.5g}   Var = {v:12.5g}")

# the closed form and the recursion agree
params = Parameters(0.6, 0.2, 0.2, s=0.7)
rec = second_moment_recursion(params, 10**4)
closed = mean_square_displacement(params, np.arange(1, 10**4 + 1))
print("max relative gap, closed form vs recursion:", np.max(np.abs(closed / rec - 1)))
print("<x_2> =", mean_displacement(params, 2), " <x_2^2> =", mean_square_displacement(params, 2), "= 4p + r")
