"""Split SplitMix64 streams keyed by (master_seed, trajectory index).

Pinned definition (golden tests depend on it; do not change):

* ``mix64`` is the SplitMix64 output finaliser (Stafford variant 13)::

      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
      z = (z ^ (z >> 27)) * 0x94D049BB133111EB
      z ^ (z >> 31)

* ``mix_gamma`` derives an odd stream increment as in SplittableRandom::

      z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCD
      z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53
      z = (z ^ (z >> 33)) | 1
      if popcount(z ^ (z >> 1)) < 24: z ^= 0xAAAAAAAAAAAAAAAA

* trajectory ``i`` of ``master_seed`` has
  ``seed_i = mix64(master_seed + (2i+1) G)`` and
  ``gamma_i = mix_gamma(master_seed + (2i+2) G)`` with
  ``G = 0x9E3779B97F4A7C15``; all arithmetic is modulo 2**64.
* the k-th draw (k = 1, 2, ...) of trajectory i is
  ``u_k = (mix64(seed_i + k * gamma_i) >> 11) * 2**-53`` in [0, 1).

Draw k is consumed by step k of the walk, so any draw can be computed
directly from its counter and streams never depend on scheduling.
"""
from __future__ import annotations

import numba as nb
import numpy as np

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_G1 = 0xFF51AFD7ED558CCD
_G2 = 0xC4CEB9FE1A85EC53
_ALT = 0xAAAAAAAAAAAAAAAA
INV_2_53 = 1.0 / 9007199254740992.0


# Plain-integer reference implementation.

def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * _M1) & MASK
    z = ((z ^ (z >> 27)) * _M2) & MASK
    return z ^ (z >> 31)


def mix_gamma(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 33)) * _G1) & MASK
    z = ((z ^ (z >> 33)) * _G2) & MASK
    z = (z ^ (z >> 33)) | 1
    if bin(z ^ (z >> 1)).count("1") < 24:
        z ^= _ALT
    return z


def stream_key(master_seed: int, index: int) -> tuple[int, int]:
    base = master_seed & MASK
    seed = mix64(base + (2 * index + 1) * GOLDEN)
    gamma = mix_gamma(base + (2 * index + 2) * GOLDEN)
    return seed, gamma


def uniforms(master_seed: int, index: int, n: int, start: int = 1) -> list[float]:
    """Draws ``start .. start+n-1`` of one trajectory's stream."""
    seed, gamma = stream_key(master_seed, index)
    return [(mix64(seed + k * gamma) >> 11) * INV_2_53 for k in range(start, start + n)]


# Compiled versions used by the simulation kernel.

_U_M1 = np.uint64(_M1)
_U_M2 = np.uint64(_M2)
_U_G1 = np.uint64(_G1)
_U_G2 = np.uint64(_G2)
_U_ALT = np.uint64(_ALT)
_U_GOLDEN = np.uint64(GOLDEN)
_U1 = np.uint64(1)
_S11 = np.uint64(11)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_S33 = np.uint64(33)


@nb.njit(cache=True, inline="always")
def mix64_jit(z):
    z = (z ^ (z >> _S30)) * _U_M1
    z = (z ^ (z >> _S27)) * _U_M2
    return z ^ (z >> _S31)


@nb.njit(cache=True, inline="always")
def unit_jit(z):
    return np.float64(mix64_jit(z) >> _S11) * INV_2_53


@nb.njit(cache=True)
def _popcount(z):
    c = 0
    while z:
        z &= z - _U1
        c += 1
    return c


@nb.njit(cache=True)
def _mix_gamma_jit(z):
    z = (z ^ (z >> _S33)) * _U_G1
    z = (z ^ (z >> _S33)) * _U_G2
    z = (z ^ (z >> _S33)) | _U1
    if _popcount(z ^ (z >> _U1)) < 24:
        z ^= _U_ALT
    return z


@nb.njit(cache=True)
def stream_keys(master_seed, start, count):
    """(seeds, gammas) for trajectories start .. start+count-1."""
    seeds = np.empty(count, dtype=np.uint64)
    gammas = np.empty(count, dtype=np.uint64)
    base = np.uint64(master_seed)
    for k in range(count):
        i = np.uint64(start + k)
        two_i = i + i
        seeds[k] = mix64_jit(base + (two_i + _U1) * _U_GOLDEN)
        gammas[k] = _mix_gamma_jit(base + (two_i + np.uint64(2)) * _U_GOLDEN)
    return seeds, gammas


def to_seed(master_seed: int) -> np.uint64:
    """Reduce any Python integer seed to 64 bits."""
    return np.uint64(int(master_seed) & MASK)
