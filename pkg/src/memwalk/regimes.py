"""Asymptotic variance regimes and growth-exponent fits."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ParameterError
from .model import SUM_TOL, Parameters

SUBDIFFUSIVE_REST = "SubdiffusiveRest"
SUBDIFFUSIVE_MEMORY = "SubdiffusiveMemory"
BOUNDARY_SUBDIFFUSIVE = "BoundarySubdiffusive"
DIFFUSIVE = "Diffusive"
MARGINAL_SUPERDIFFUSIVE = "MarginalSuperdiffusive"
SUPERDIFFUSIVE = "Superdiffusive"
FROZEN = "Frozen"

SUBDIFFUSIVE_LABELS = frozenset({SUBDIFFUSIVE_REST, SUBDIFFUSIVE_MEMORY, BOUNDARY_SUBDIFFUSIVE})
REGIMES = (
    SUBDIFFUSIVE_REST,
    SUBDIFFUSIVE_MEMORY,
    BOUNDARY_SUBDIFFUSIVE,
    DIFFUSIVE,
    MARGINAL_SUPERDIFFUSIVE,
    SUPERDIFFUSIVE,
    FROZEN,
)


@dataclass(frozen=True)
class RegimeReport:
    regime: str
    exponent: float
    # None when the presence of a logarithmic factor is not known
    log_correction: Optional[bool]


@dataclass(frozen=True)
class ExponentFit:
    exponent: float
    goodness: float
    window: tuple[int, int]
    intercept: float = 0.0


def _eq(a, b):
    return abs(a - b) <= SUM_TOL


def classify(params: Parameters) -> RegimeReport:
    """Long-time growth law of the variance, Var ~ t**exponent.

    Rules are applied in order; comparisons use an absolute tolerance of
    1e-12, so points meant to sit on a boundary must be given exactly.
    """
    g, r = params.gamma, params.r
    if _eq(r, 1.0):
        return RegimeReport(FROZEN, 0.0, False)
    if g > 0.5 + SUM_TOL:
        return RegimeReport(SUPERDIFFUSIVE, 2.0 * g, False)
    if _eq(g, 0.5):
        if _eq(r, 0.0):
            return RegimeReport(MARGINAL_SUPERDIFFUSIVE, 1.0, True)
        return RegimeReport(DIFFUSIVE, 1.0, False)
    if _eq(r, 0.0):
        return RegimeReport(DIFFUSIVE, 1.0, False)
    if g <= SUM_TOL:
        return RegimeReport(SUBDIFFUSIVE_REST, 1.0 - r, False)
    memory, rest = 2.0 * g, 1.0 - r
    if _eq(memory, rest):
        return RegimeReport(BOUNDARY_SUBDIFFUSIVE, rest, None)
    if memory < rest:
        return RegimeReport(SUBDIFFUSIVE_REST, rest, False)
    return RegimeReport(SUBDIFFUSIVE_MEMORY, memory, False)


@dataclass(frozen=True)
class RegimeInterval:
    regime: str
    start: float
    end: float
    n_points: int

    @property
    def is_point(self) -> bool:
        return self.start == self.end


@dataclass
class SweepResult:
    constraint: str
    value: float
    coordinate: str
    coords: np.ndarray
    points: list[tuple[Parameters, RegimeReport]]
    intervals: list[RegimeInterval]

    def labels(self) -> list[str]:
        return [iv.regime for iv in self.intervals]


def _line(constraint: str, value: float, s: float):
    """Return (coordinate name, lo, hi, coord -> Parameters, critical coords)."""
    if constraint == "p":
        if not 0.0 <= value <= 1.0:
            raise ParameterError(f"fixed p={value} is not a probability")

        def make(q):
            q = min(max(q, 0.0), 1.0 - value)
            return Parameters(value, q, max(1.0 - value - q, 0.0), s)

        # gamma = 1/2, r = 0, 2 gamma = 1 - r (q = p/3), gamma = 0
        crit = [value - 0.5, 1.0 - value, value / 3.0, value]
        return "q", 0.0, 1.0 - value, make, crit
    if constraint == "r":
        if not 0.0 <= value <= 1.0:
            raise ParameterError(f"fixed r={value} is not a probability")
        half = 1.0 - value

        def make(g):
            return Parameters.from_gamma(min(max(g, -half), half), value, s)

        return "gamma", -half, half, make, [0.0, 0.5, 0.5 * (1.0 - value)]
    if constraint in ("gamma", "g"):
        if not -1.0 <= value <= 1.0:
            raise ParameterError(f"fixed gamma={value} outside [-1, 1]")
        top = 1.0 - abs(value)

        def make(r):
            return Parameters.from_gamma(value, min(max(r, 0.0), top), s)

        return "r", 0.0, top, make, [0.0, 1.0 - 2.0 * value]
    raise ParameterError(f"unknown constraint {constraint!r}; use p, r or gamma")


def sweep_line(constraint: str, value: float, n_points: int = 50, s: float = 0.5) -> SweepResult:
    """Classify points along a line of the parameter simplex.

    ``constraint`` fixes ``p`` (q runs from 0 to 1-p), ``r`` (gamma runs
    from -(1-r) to 1-r) or ``gamma`` (r runs from 0 to 1-|gamma|).  The
    uniform grid is augmented with the exact crossings of regime
    boundaries so that zero-width regimes are not skipped.  Consecutive
    points with the same label are collapsed into intervals.
    """
    if n_points < 2:
        raise ParameterError("a sweep needs at least 2 points")
    coordinate, lo, hi, make, crit = _line(constraint, value, s)
    grid = np.linspace(lo, hi, n_points)
    extra = [c for c in crit if lo < c < hi]
    coords = np.unique(np.concatenate([grid, extra]))
    points = []
    for c in coords:
        params = make(float(c))
        points.append((params, classify(params)))

    intervals: list[RegimeInterval] = []
    for c, (_, rep) in zip(coords, points):
        if intervals and intervals[-1].regime == rep.regime:
            last = intervals[-1]
            intervals[-1] = RegimeInterval(last.regime, last.start, float(c), last.n_points + 1)
        else:
            intervals.append(RegimeInterval(rep.regime, float(c), float(c), 1))
    return SweepResult(constraint, value, coordinate, coords, points, intervals)


def fit_exponent(series, window_fraction: float = 1.0) -> ExponentFit:
    """Least-squares slope of log Var against log t over the trailing part of a series.

    ``window_fraction`` is the trailing fraction of recorded points used.
    ``series`` is a :class:`~memwalk.moments.MomentSeries` or a ``(times,
    variance)`` pair.
    """
    if isinstance(series, tuple):
        times, var = series
    else:
        times, var = series.times, series.variance
    times = np.asarray(times, dtype=float)
    var = np.asarray(var, dtype=float)
    if not 0.0 < window_fraction <= 1.0:
        raise ValueError("window_fraction must lie in (0, 1]")
    n = len(times)
    k = max(int(round(window_fraction * n)), 1)
    t, v = times[n - k:], var[n - k:]
    if len(t) < 3:
        raise ValueError(f"degenerate fit window: {len(t)} points (need >= 3)")
    if np.any(v <= 0):
        raise ValueError("degenerate fit window: variance must be positive")
    x, y = np.log(t), np.log(v)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = np.sum((y - y.mean()) ** 2)
    goodness = 1.0 - np.sum(resid**2) / ss_tot if ss_tot > 0 else 1.0
    goodness = float(min(max(goodness, 0.0), 1.0))
    return ExponentFit(float(slope), goodness, (int(t[0]), int(t[-1])), float(intercept))


def regime_table(points) -> list[dict]:
    """Rows for the regime-map CSV."""
    rows = []
    for params, rep in points:
        rows.append(
            {
                "p": params.p,
                "q": params.q,
                "r": params.r,
                "gamma": params.gamma,
                "regime": rep.regime,
                "exponent": rep.exponent,
                "log_correction": "unknown" if rep.log_correction is None else str(rep.log_correction).lower(),
            }
        )
    return rows


def trailing_fraction(times, decades: float = 1.0) -> float:
    """Fraction of recorded points with t >= t_last / 10**decades."""
    times = np.asarray(times)
    return float(np.mean(times >= times[-1] / 10.0**decades))


def analytic_exponent(params: Parameters, t_max: int = 10**6, per_decade: int = 20,
                      decades: float = 1.0) -> ExponentFit:
    """Fit the exact variance over the trailing ``decades`` up to ``t_max``."""
    from .engine import geometric_times
    from .moments import variance_series

    times = geometric_times(t_max, per_decade)
    series = variance_series(params, times)
    return fit_exponent(series, trailing_fraction(times, decades))
