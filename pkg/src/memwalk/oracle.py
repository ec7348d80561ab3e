"""Exact forward evolution of the walk's distribution for small t.

Because the one-step law depends on the history only through the counts
(n_plus, n_minus) at a given t, the full distribution of those counts can
be pushed forward level by level.  Level t holds a dense (t+1, t+1) array
whose entry [i, j] is P(n_plus = i, n_minus = j); entries with i + j > t
are always zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError
from .model import Parameters

DEFAULT_CEILING = 512


@dataclass
class ExactDistribution:
    t: int
    mass: np.ndarray

    def as_dict(self) -> dict[tuple[int, int], float]:
        i, j = np.nonzero(self.mass)
        return {(int(a), int(b)): float(self.mass[a, b]) for a, b in zip(i, j)}

    def total(self) -> float:
        return float(self.mass.sum())


def _initial(params: Parameters) -> np.ndarray:
    mass = np.zeros((2, 2))
    mass[1, 0] = params.s
    mass[0, 1] = 1.0 - params.s
    return mass


def _advance(params: Parameters, mass: np.ndarray, t: int) -> np.ndarray:
    """Push level t to level t + 1."""
    n = t + 1
    i = np.arange(n, dtype=float)[:, None]
    j = np.arange(n, dtype=float)[None, :]
    n_zero = np.maximum(t - i - j, 0.0)
    p_plus = (i * params.p + j * params.q) / t
    p_minus = (j * params.p + i * params.q) / t
    p_zero = ((i + j) * params.r + n_zero) / t
    out = np.zeros((n + 1, n + 1))
    out[1:, :n] += mass * p_plus
    out[:n, 1:] += mass * p_minus
    out[:n, :n] += mass * p_zero
    return out


def evolve_exact(params: Parameters, t_max: int, ceiling: int = DEFAULT_CEILING) -> list[ExactDistribution]:
    """Distributions at t = 1 .. t_max.  Work is O(t_max**3), memory O(t_max**3)."""
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    if t_max > ceiling:
        raise ResourceLimitError(f"t_max={t_max} exceeds the exact-evolution ceiling {ceiling}")
    mass = _initial(params)
    levels = [ExactDistribution(1, mass)]
    for t in range(1, t_max):
        mass = _advance(params, mass, t)
        levels.append(ExactDistribution(t + 1, mass))
    return levels


def exact_distribution(params: Parameters, t: int, ceiling: int = DEFAULT_CEILING) -> ExactDistribution:
    """Distribution at a single time, keeping only one level in memory."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if t > ceiling:
        raise ResourceLimitError(f"t={t} exceeds the exact-evolution ceiling {ceiling}")
    mass = _initial(params)
    for k in range(1, t):
        mass = _advance(params, mass, k)
    return ExactDistribution(t, mass)


def position_arrays(dist: ExactDistribution) -> tuple[np.ndarray, np.ndarray]:
    """Positions -t..t and their probabilities (zeros included)."""
    n = dist.mass.shape[0]
    i, j = np.indices(dist.mass.shape)
    x = (i - j).ravel() + (n - 1)
    probs = np.bincount(x, weights=dist.mass.ravel(), minlength=2 * n - 1)
    positions = np.arange(-(n - 1), n)
    return positions, probs


def position_distribution(dist: ExactDistribution) -> dict[int, float]:
    """P(x_t = x) for every reachable x."""
    positions, probs = position_arrays(dist)
    return {int(x): float(p) for x, p in zip(positions, probs) if p > 0}


def exact_moments(dist: ExactDistribution) -> tuple[float, float]:
    """(mean, mean square) of the position."""
    i, j = np.indices(dist.mass.shape)
    x = (i - j).astype(float)
    return float(np.sum(x * dist.mass)), float(np.sum(x * x * dist.mass))
