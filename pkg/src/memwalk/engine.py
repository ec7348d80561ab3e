"""Seeded Monte Carlo ensembles of the memory walk.

Each trajectory carries only its step counts, so one step costs O(1)
regardless of how long the history is.  Trajectory ``i`` reads its own
counter-based stream (see :mod:`memwalk.rng`); trajectories are simulated
in fixed-size chunks whose accumulators are merged in ascending index
order, which makes the result independent of the thread count.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Optional

import numba as nb
import numpy as np

from . import __version__
from .accumulator import MomentAccumulator
from .errors import ResourceLimitError
from .model import Parameters
from .moments import MomentSeries
from .rng import stream_keys, to_seed, unit_jit

# the TBB shipped on many systems is older than numba accepts
if "NUMBA_THREADING_LAYER" not in os.environ:
    nb.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

DEFAULT_CHUNK = 8192
DEFAULT_MAX_CELLS = 10**10


def geometric_times(t_max: int, per_decade: int = 20) -> np.ndarray:
    """Integer times 1..t_max spaced ~``per_decade`` per decade, t_max included."""
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    n = int(np.ceil(np.log10(t_max) * per_decade)) + 1 if t_max > 1 else 1
    raw = np.round(np.logspace(0.0, np.log10(t_max), max(n, 1)))
    return np.unique(np.concatenate([raw.astype(np.int64), [t_max]]))


@dataclass
class EnsembleConfig:
    master_seed: int
    n_trajectories: int
    t_max: int
    record_times: Optional[np.ndarray] = None
    chunk_size: int = DEFAULT_CHUNK
    threads: Optional[int] = None
    max_cells: int = DEFAULT_MAX_CELLS

    def __post_init__(self):
        if self.n_trajectories < 1:
            raise ValueError("n_trajectories must be >= 1")
        if self.t_max < 1:
            raise ValueError("t_max must be >= 1")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")
        if self.record_times is None:
            self.record_times = geometric_times(self.t_max)
        rec = np.asarray(self.record_times, dtype=np.int64)
        if rec.ndim != 1 or len(rec) == 0:
            raise ValueError("record_times must be a non-empty sequence")
        if np.any(np.diff(rec) <= 0):
            raise ValueError("record_times must be strictly increasing")
        if rec[0] < 1 or rec[-1] > self.t_max:
            raise ValueError("record_times must lie in [1, t_max]")
        self.record_times = rec

    def to_dict(self) -> dict:
        d = asdict(self)
        d["record_times"] = [int(t) for t in self.record_times]
        d.pop("threads")
        return d


@dataclass
class SimulationResult:
    series: MomentSeries
    mean_se: np.ndarray
    var_se: np.ndarray
    n: int
    provenance: dict = field(default_factory=dict)

    def rows(self) -> list[dict]:
        s = self.series
        return [
            {
                "t": int(s.times[k]),
                "mean": float(s.mean[k]),
                "mean_se": float(self.mean_se[k]),
                "var": float(s.variance[k]),
                "var_se": float(self.var_se[k]),
                "n": int(self.n),
            }
            for k in range(len(s))
        ]


@nb.njit(cache=True, parallel=True)
def _simulate_block(p, q, r, s, t_max, rec, seeds, gammas, out):
    n = seeds.shape[0]
    n_rec = rec.shape[0]
    for i in nb.prange(n):
        g = gammas[i]
        state = seeds[i] + g
        if unit_jit(state) < s:
            n_plus, n_minus = 1, 0
        else:
            n_plus, n_minus = 0, 1
        n_zero = 0
        k = 0
        if rec[0] == 1:
            out[i, 0] = n_plus - n_minus
            k = 1
        for t in range(1, t_max):
            state += g
            u = unit_jit(state)
            p_plus = (n_plus * p + n_minus * q) / t
            p_zero = ((n_plus + n_minus) * r + n_zero) / t
            if u < p_plus:
                n_plus += 1
            elif u < p_plus + p_zero:
                n_zero += 1
            else:
                n_minus += 1
            if k < n_rec and rec[k] == t + 1:
                out[i, k] = n_plus - n_minus
                k += 1


@contextmanager
def _numba_threads(threads: Optional[int]):
    if threads is None:
        yield
        return
    old = nb.get_num_threads()
    nb.set_num_threads(max(1, min(int(threads), nb.config.NUMBA_NUM_THREADS)))
    try:
        yield
    finally:
        nb.set_num_threads(old)


def simulate_positions(params: Parameters, t_max: int, record_times, master_seed: int,
                       start: int, count: int) -> np.ndarray:
    """Positions of trajectories ``start .. start+count-1`` at ``record_times``."""
    rec = np.asarray(record_times, dtype=np.int64)
    seeds, gammas = stream_keys(to_seed(master_seed), start, count)
    out = np.empty((count, len(rec)), dtype=np.int64)
    _simulate_block(float(params.p), float(params.q), float(params.r), float(params.s),
                    int(t_max), rec, seeds, gammas, out)
    return out


def simulate_trajectory(params: Parameters, t_max: int, master_seed: int, index: int = 0,
                        record_times=None) -> np.ndarray:
    """One trajectory's positions at ``record_times`` (default: every step).

    Identical to row ``index`` of any ensemble run with the same seed.
    """
    rec = np.arange(1, t_max + 1) if record_times is None else record_times
    return simulate_positions(params, t_max, rec, master_seed, index, 1)[0]


def run_ensemble(params: Parameters, config: EnsembleConfig) -> SimulationResult:
    rec = config.record_times
    cells = config.n_trajectories * len(rec)
    if cells > config.max_cells:
        raise ResourceLimitError(
            f"{config.n_trajectories} trajectories x {len(rec)} record times exceeds budget {config.max_cells}"
        )
    acc = MomentAccumulator.empty(rec)
    with _numba_threads(config.threads):
        for start in range(0, config.n_trajectories, config.chunk_size):
            count = min(config.chunk_size, config.n_trajectories - start)
            block = simulate_positions(params, config.t_max, rec, config.master_seed, start, count)
            acc = acc.merge(MomentAccumulator.from_samples(rec, block))
    return result_from_accumulator(params, config, acc)


def result_from_accumulator(params: Parameters, config: EnsembleConfig,
                            acc: MomentAccumulator) -> SimulationResult:
    var = acc.variance
    series = MomentSeries(acc.times, acc.mean, var + acc.mean**2, var)
    provenance = {
        "params": {"p": params.p, "q": params.q, "r": params.r, "s": params.s},
        "config": config.to_dict(),
        "code_version": __version__,
        "rng": "splitmix64-split/v1",
    }
    return SimulationResult(series, acc.mean_se, acc.variance_se, acc.count, provenance)


def default_threads() -> int:
    return os.cpu_count() or 1
