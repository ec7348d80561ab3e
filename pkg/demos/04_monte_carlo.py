"""
Monte Carlo ensembles
=====================

Trajectories run in parallel with one counter-based random stream each,
so the same seed gives the same numbers on any number of threads.  Here
a diffusive point is simulated and the diffusion coefficient recovered.
"""
import time

import numpy as np

from memwalk import EnsembleConfig, Parameters, diffusion_coefficient, run_ensemble, variance_series
from memwalk.moments import fit_diffusion_coefficient, subleading_exponent

params = Parameters(0.6, 0.1, 0.3, s=0.5)
times = np.unique(np.round(np.geomspace(1e3, 1e4, 21)).astype(np.int64))

start = time.perf_counter()
result = run_ensemble(params, EnsembleConfig(master_seed=1, n_trajectories=20000, t_max=10**4, record_times=times))
print(f"{result.n} trajectories of 1e4 steps in {time.perf_counter() - start:.1f} s")

exact = variance_series(params, times).variance
z = (result.series.variance - exact) / result.var_se
print("variance z-scores against the exact series: max |z| = %.2f" % np.abs(z).max())

c = subleading_exponent(params)
print("D from the formula:       %.4f" % diffusion_coefficient(params))
print("D fitted to the ensemble: %.4f" % fit_diffusion_coefficient(times, result.series.variance, c))
