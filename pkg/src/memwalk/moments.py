"""Exact first and second moments of the walk.

Closed forms are evaluated through :func:`memwalk.special.gamma_ratio`;
the exact recursions are kept alongside as an independent route and as the
only route on the line ``2*gamma + r = 1`` where the closed form for the
mean square displacement is 0/0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp

from .errors import RegimeError
from .model import SUM_TOL, Parameters
from .special import gamma_ratio, pochhammer_product, rising_ratio

SINGULAR_TOL = 1e-6

CLOSED_FORM = "closed_form"
CLOSED_FORM_SYMMETRIC = "closed_form_symmetric"
RECURSION = "recursion"
FROZEN = "frozen"


@dataclass
class MomentSeries:
    """Mean, mean square and variance of the position at increasing times."""

    times: np.ndarray
    mean: np.ndarray
    mean_sq: np.ndarray
    variance: np.ndarray = field(default=None)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=np.int64)
        self.mean = np.asarray(self.mean, dtype=float)
        self.mean_sq = np.asarray(self.mean_sq, dtype=float)
        if self.variance is None:
            self.variance = self.mean_sq - self.mean**2
        self.variance = np.asarray(self.variance, dtype=float)
        if self.times.ndim != 1 or len(self.times) == 0:
            raise ValueError("times must be a non-empty 1-d sequence")
        if self.times[0] < 1 or np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing and >= 1")
        n = len(self.times)
        if not (len(self.mean) == len(self.mean_sq) == len(self.variance) == n):
            raise ValueError("series length mismatch")

    def __len__(self):
        return len(self.times)


def _times(t) -> np.ndarray:
    arr = np.asarray(t)
    if np.any(arr < 1):
        raise ValueError("times must be >= 1")
    return arr


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


def mean_displacement(params: Parameters, t):
    """<x_t> = (2s-1) Gamma(t+gamma) / (Gamma(1+gamma) Gamma(t))."""
    tt = _times(t).astype(float)
    g = params.gamma
    ratio = np.where(tt == 1, 1.0, sp.rgamma(1.0 + g) * gamma_ratio(g, np.maximum(tt, 2)))
    return _scalar((2.0 * params.s - 1.0) * ratio)


def mean_displacement_recursion(params: Parameters, t_max: int) -> np.ndarray:
    """<x_1> .. <x_{t_max}> from <x_{t+1}> = (1 + gamma/t) <x_t>."""
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    k = np.arange(1, t_max, dtype=float)
    factors = np.concatenate(([2.0 * params.s - 1.0], 1.0 + params.gamma / k))
    return np.cumprod(factors)


def expected_sigma_sq(params: Parameters, t):
    """Probability that step t is nonzero: Gamma(t-r)/(Gamma(1-r) Gamma(t))."""
    tt = _times(t).astype(float)
    r = params.r
    if abs(r - 1.0) <= SUM_TOL:
        return _scalar(np.where(tt == 1, 1.0, 0.0))
    ratio = sp.rgamma(1.0 - r) * gamma_ratio(-r, np.maximum(tt, 2))
    return _scalar(np.where(tt == 1, 1.0, ratio))


def cumulative_sigma_sq(params: Parameters, t):
    """Expected number of nonzero steps among the first t."""
    tt = _times(t).astype(float)
    r = params.r
    return _scalar(sp.rgamma(2.0 - r) * gamma_ratio(1.0 - r, tt))


def msd_branch(params: Parameters) -> str:
    """Which evaluator :func:`mean_square_displacement` uses for t > 1."""
    if abs(params.r - 1.0) <= SUM_TOL:
        return FROZEN
    if abs(params.gamma) <= SUM_TOL:
        return CLOSED_FORM_SYMMETRIC
    if abs(2.0 * params.gamma + params.r - 1.0) <= SINGULAR_TOL:
        return RECURSION
    return CLOSED_FORM


def second_moment_recursion(params: Parameters, t_max: int) -> np.ndarray:
    """<x_1^2> .. <x_{t_max}^2> by the exact linear recursion.

    <x_{t+1}^2> = (1 + 2 gamma / t) <x_t^2> + (1 - r)/t * C(t), with the
    expected moving-step count C updated multiplicatively,
    C(t+1) = C(t) (t + 1 - r) / t.
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    two_g, r = 2.0 * params.gamma, params.r
    one_minus_r = 1.0 - r
    out = np.empty(t_max)
    x2 = 1.0
    c = 1.0
    out[0] = x2
    for t in range(1, t_max):
        x2 = (1.0 + two_g / t) * x2 + one_minus_r / t * c
        c *= (t + one_minus_r) / t
        out[t] = x2
    return out


def _msd_closed(params: Parameters, tt: np.ndarray) -> np.ndarray:
    g2, r = 2.0 * params.gamma, params.r
    return (rising_ratio(g2, tt) - rising_ratio(1.0 - r, tt)) / (g2 + r - 1.0)


def mean_square_displacement(params: Parameters, t):
    """<x_t^2>, exact for every t >= 1 and every valid parameter point."""
    tt = _times(t)
    branch = msd_branch(params)
    if branch == FROZEN:
        out = np.ones(tt.shape)
    elif branch == CLOSED_FORM_SYMMETRIC:
        out = np.asarray(cumulative_sigma_sq(params, tt), dtype=float)
    elif branch == RECURSION:
        series = second_moment_recursion(params, int(np.max(tt)))
        out = series[np.asarray(tt, dtype=np.int64) - 1]
    else:
        out = _msd_closed(params, tt.astype(float))
    out = np.where(tt == 1, 1.0, out)
    return _scalar(out)


def variance_series(params: Parameters, times) -> MomentSeries:
    times = np.asarray(times, dtype=np.int64)
    mean = np.atleast_1d(mean_displacement(params, times))
    mean_sq = np.atleast_1d(mean_square_displacement(params, times))
    return MomentSeries(times, mean, mean_sq)


def diffusion_coefficient(params: Parameters) -> float:
    """D in Var ~ 2 D t on the diffusive locus.

    On gamma = 1/2 with r > 0 this is 1/(3-4p) - 2(2s-1)^2/pi, the second
    term coming from the squared mean.  On r = 0 with gamma < 1/2 the mean
    is subleading and Var ~ t/(3-4p), i.e. D = 1/(2(3-4p)).
    """
    from .regimes import DIFFUSIVE, classify

    report = classify(params)
    if report.regime != DIFFUSIVE:
        raise RegimeError(f"no diffusion coefficient in regime {report.regime}")
    if abs(params.gamma - 0.5) <= SUM_TOL:
        return 1.0 / (3.0 - 4.0 * params.p) - 2.0 * (2.0 * params.s - 1.0) ** 2 / math.pi
    return 0.5 / (3.0 - 4.0 * params.p)


def subleading_exponent(params: Parameters) -> float:
    """Growth exponent of the largest correction to Var on the diffusive locus."""
    if abs(params.gamma - 0.5) <= SUM_TOL:
        return 1.0 - params.r
    return max(2.0 * params.gamma, 0.0)


def fit_diffusion_coefficient(times, variance, correction_exponent: float) -> float:
    """Least-squares D from Var = 2 D t + B t**c (B t**0 when c <= 0)."""
    t = np.asarray(times, dtype=float)
    v = np.asarray(variance, dtype=float)
    second = t**correction_exponent if correction_exponent > 0 else np.ones_like(t)
    design = np.column_stack([t, second])
    # column scaling keeps the normal equations well conditioned
    scale = np.abs(design).max(axis=0)
    coef, *_ = np.linalg.lstsq(design / scale, v, rcond=None)
    return 0.5 * coef[0] / scale[0]


def mean_displacement_product(params: Parameters, t: int) -> float:
    """<x_t> via the finite product; also valid at gamma = -1."""
    return (2.0 * params.s - 1.0) * pochhammer_product(params.gamma, t)
