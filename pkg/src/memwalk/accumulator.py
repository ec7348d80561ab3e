"""Mergeable single-pass moment statistics, one slot per recorded time.

Each slot keeps the count, the running mean and the central sums
M2, M3, M4.  Batches are reduced with a two-pass formula and combined
with the pairwise update of Chan et al. / Pebay, which is exact in the
count and numerically stable in the moments.  M3 and M4 are carried so
that the standard error of the variance can be reported.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class MomentAccumulator:
    times: np.ndarray
    count: int
    mean: np.ndarray
    m2: np.ndarray
    m3: np.ndarray
    m4: np.ndarray

    @classmethod
    def empty(cls, times) -> "MomentAccumulator":
        times = np.asarray(times, dtype=np.int64)
        z = np.zeros(len(times))
        return cls(times, 0, z.copy(), z.copy(), z.copy(), z.copy())

    @classmethod
    def from_samples(cls, times, samples) -> "MomentAccumulator":
        """``samples`` has shape (n_trajectories, len(times))."""
        times = np.asarray(times, dtype=np.int64)
        x = np.asarray(samples, dtype=float)
        if x.ndim != 2 or x.shape[1] != len(times):
            raise ValueError("samples must have shape (n, len(times))")
        n = x.shape[0]
        if n == 0:
            return cls.empty(times)
        mean = x.mean(axis=0)
        d = x - mean
        d2 = d * d
        return cls(times, n, mean, d2.sum(axis=0), (d2 * d).sum(axis=0), (d2 * d2).sum(axis=0))

    def merge(self, other: "MomentAccumulator") -> "MomentAccumulator":
        return merge_accumulators(self, other)

    @property
    def variance(self) -> np.ndarray:
        """Unbiased sample variance (NaN for fewer than 2 samples)."""
        if self.count < 2:
            return np.full(len(self.times), np.nan)
        return self.m2 / (self.count - 1)

    @property
    def mean_se(self) -> np.ndarray:
        return np.sqrt(self.variance / self.count)

    @property
    def variance_se(self) -> np.ndarray:
        """sqrt((mu4 - (n-3)/(n-1) sigma^4) / n) with plug-in moments."""
        n = self.count
        if n < 2:
            return np.full(len(self.times), np.nan)
        s2 = self.variance
        mu4 = self.m4 / n
        return np.sqrt(np.maximum(mu4 - (n - 3) / (n - 1) * s2 * s2, 0.0) / n)


def merge_accumulators(a: MomentAccumulator, b: MomentAccumulator) -> MomentAccumulator:
    if a.times.shape != b.times.shape or np.any(a.times != b.times):
        raise ValueError("cannot merge accumulators with different record times")
    if b.count == 0:
        return MomentAccumulator(a.times, a.count, a.mean.copy(), a.m2.copy(), a.m3.copy(), a.m4.copy())
    if a.count == 0:
        return MomentAccumulator(b.times, b.count, b.mean.copy(), b.m2.copy(), b.m3.copy(), b.m4.copy())
    na, nb = float(a.count), float(b.count)
    n = na + nb
    delta = b.mean - a.mean
    d_n = delta / n
    d_n2 = d_n * d_n
    mean = a.mean + nb * d_n
    m2 = a.m2 + b.m2 + delta * d_n * na * nb
    m3 = (
        a.m3 + b.m3
        + delta * d_n2 * na * nb * (na - nb)
        + 3.0 * d_n * (na * b.m2 - nb * a.m2)
    )
    m4 = (
        a.m4 + b.m4
        + delta * d_n2 * d_n * na * nb * (na * na - na * nb + nb * nb)
        + 6.0 * d_n2 * (na * na * b.m2 + nb * nb * a.m2)
        + 4.0 * d_n * (na * b.m3 - nb * a.m3)
    )
    return MomentAccumulator(a.times, a.count + b.count, mean, m2, m3, m4)
