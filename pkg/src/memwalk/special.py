"""Gamma-function ratios that stay accurate for very large arguments.

``gamma_ratio(a, t) = Gamma(t + a) / Gamma(t)`` is the building block of
every closed-form moment.  Subtracting two log-gamma values near 2e10
(t = 1e9) would lose about six digits, so for large arguments the
difference of Stirling series is formed analytically instead.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special as sp

# B_{2k} / (2k (2k - 1)), k = 1..7
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)
_LARGE = 16.0


def _log_ratio_stirling(a: np.ndarray, t: np.ndarray) -> np.ndarray:
    # (t+a-1/2) log(t+a) - (t-1/2) log t - a, regrouped around log1p(a/t)
    z = t + a
    out = a * np.log(t) + (z - 0.5) * np.log1p(a / t) - a
    zi, ti = 1.0 / z, 1.0 / t
    zi2, ti2 = zi * zi, ti * ti
    zp, tp = zi, ti
    for c in _STIRLING:
        out += c * (zp - tp)
        zp *= zi2
        tp *= ti2
    return out


def gamma_ratio(offset, t):
    """Gamma(t + offset) / Gamma(t) for t >= 1.

    Accepts scalars or arrays (broadcast).  Raises ``ValueError`` when
    ``t + offset`` is a pole (a non-positive integer).
    """
    a = np.asarray(offset, dtype=float)
    tt = np.asarray(t, dtype=float)
    a, tt = np.broadcast_arrays(a, tt)
    if np.any(tt < 1):
        raise ValueError("gamma_ratio requires t >= 1")
    z = tt + a
    if np.any((z <= 0) & (z == np.floor(z))):
        raise ValueError("t + offset is a pole of the gamma function")

    out = np.empty(a.shape, dtype=float)
    large = (tt >= _LARGE) & (z >= _LARGE)
    if np.any(large):
        out[large] = np.exp(_log_ratio_stirling(a[large], tt[large]))
    small = ~large
    if np.any(small):
        zs, ts = z[small], tt[small]
        out[small] = sp.gammasgn(zs) * np.exp(sp.gammaln(zs) - sp.gammaln(ts))
    out[a == 0] = 1.0
    return out[()] if out.ndim == 0 else out


def rising_ratio(a, t):
    """Gamma(t + a) / (Gamma(a) Gamma(t)), finite for every real ``a``.

    Equals ``a (a+1) ... (a+t-1) / (t-1)!`` for integer t; vanishes when
    ``a`` is a non-positive integer with ``t > -a``.
    """
    scalar = np.ndim(a) == 0 and np.ndim(t) == 0
    a = np.atleast_1d(np.asarray(a, dtype=float))
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    a, tt = np.broadcast_arrays(a, tt)
    out = np.empty(a.shape, dtype=float)
    direct = tt + a > 0.5
    if np.any(direct):
        out[direct] = sp.rgamma(a[direct]) * gamma_ratio(a[direct], tt[direct])
    # remaining cases only occur for t in {1, 2}
    for idx in zip(*np.nonzero(~direct)):
        av, n = float(a[idx]), int(tt[idx])
        prod = av
        for k in range(1, n):
            prod *= (av + k) / k
        out[idx] = prod
    return float(out[0]) if scalar else out


def pochhammer_product(a: float, t: int) -> float:
    """prod_{k=1}^{t-1} (1 + a/k), the product form of Gamma(t+a)/(Gamma(1+a)Gamma(t))."""
    out = 1.0
    for k in range(1, int(t)):
        out *= 1.0 + a / k
    return out


def log_gamma_ratio(offset: float, t: float) -> float:
    """log |Gamma(t + offset) / Gamma(t)| as a Python float."""
    if t >= _LARGE and t + offset >= _LARGE:
        return float(_log_ratio_stirling(np.float64(offset), np.float64(t)))
    return math.lgamma(t + offset) - math.lgamma(t)
