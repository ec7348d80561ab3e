"""Self-check: exact distribution versus closed forms, and the urn property."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .model import Parameters, WalkState, step_distribution, step_distribution_reference
from .moments import mean_displacement, mean_square_displacement
from .oracle import evolve_exact, exact_moments

RTOL = 1e-9
ATOL = 1e-12

# (p, q, r): interior, r = 0, gamma = 0, q = 0, p = 3q, p = 0, near and at r = 1
GRID = (
    (0.5, 0.3, 0.2),
    (0.625, 0.125, 0.25),
    (0.8, 0.1, 0.1),
    (0.2, 0.5, 0.3),
    (0.45, 0.35, 0.2),
    (0.4, 0.6, 0.0),
    (0.75, 0.25, 0.0),
    (0.9, 0.1, 0.0),
    (0.0, 1.0, 0.0),
    (1.0, 0.0, 0.0),
    (0.3, 0.3, 0.4),
    (0.25, 0.25, 0.5),
    (0.5, 0.5, 0.0),
    (0.7, 0.0, 0.3),
    (0.4, 0.0, 0.6),
    (0.3, 0.1, 0.6),
    (0.6, 0.2, 0.2),
    (0.15, 0.05, 0.8),
    (0.0, 0.6, 0.4),
    (0.004, 0.001, 0.995),
    (0.0005, 0.0005, 0.999),
    (0.0, 0.0, 1.0),
)
S_VALUES = (0.5, 1.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def relative_deviation(value, reference):
    """|value - reference| / max(|reference|, ATOL / RTOL)."""
    value, reference = np.asarray(value, float), np.asarray(reference, float)
    return np.abs(value - reference) / np.maximum(np.abs(reference), ATOL / RTOL)


def oracle_vs_analytic(params: Parameters, t_max: int = 50, analytic_params: Parameters | None = None):
    """Largest relative deviation of exact moments from the closed forms over t <= t_max."""
    ap = analytic_params or params
    levels = evolve_exact(params, t_max)
    times = np.arange(1, t_max + 1)
    dp = np.array([exact_moments(d) for d in levels])
    mean = np.atleast_1d(mean_displacement(ap, times))
    msd = np.atleast_1d(mean_square_displacement(ap, times))
    return float(max(relative_deviation(dp[:, 0], mean).max(), relative_deviation(dp[:, 1], msd).max()))


def random_state(rng: np.random.Generator, t_max: int = 200) -> WalkState:
    t = int(rng.integers(1, t_max + 1))
    if t == 1:
        return WalkState.initial(int(rng.choice([-1, 1])))
    moving = int(rng.integers(1, t + 1))
    n_plus = int(rng.integers(0, moving + 1))
    return WalkState(t, n_plus, moving - n_plus, t - moving)


def random_params(rng: np.random.Generator) -> Parameters:
    w = rng.dirichlet([1.0, 1.0, 1.0])
    return Parameters(float(w[0]), float(w[1]), 1.0 - float(w[0]) - float(w[1]), float(rng.random()))


def urn_equivalence(n: int = 1000, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        params, state = random_params(rng), random_state(rng)
        a = np.array(step_distribution(params, state).as_tuple())
        b = np.array(step_distribution_reference(params, state).as_tuple())
        worst = max(worst, float(np.abs(a - b).max()))
    return worst


def run_verification(perturb: float = 0.0, t_max: int = 50) -> list[CheckResult]:
    """Run every check.  ``perturb`` shifts p (and q back) on the analytic side only,
    to confirm that the checks can fail."""
    results = []
    for p, q, r in GRID:
        for s in S_VALUES:
            params = Parameters(p, q, r, s)
            ap = params
            if perturb:
                dp = min(perturb, q) if q > 0 else -min(perturb, p)
                ap = Parameters(p + dp, q - dp, r, s)
            dev = oracle_vs_analytic(params, t_max, ap)
            results.append(CheckResult(
                f"oracle p={p:g} q={q:g} r={r:g} s={s:g}", dev <= RTOL, f"max rel dev {dev:.2e}"))
    worst = urn_equivalence()
    results.append(CheckResult("urn equivalence (1000 states)", worst <= 1e-12, f"max abs dev {worst:.2e}"))
    return results


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}" for r in results]
    n_ok = sum(r.passed for r in results)
    lines.append(f"{n_ok}/{len(results)} checks passed")
    return "\n".join(lines)


def main(perturb: float = 0.0) -> int:
    start = time.perf_counter()
    results = run_verification(perturb)
    print(format_table(results))
    print(f"elapsed {time.perf_counter() - start:.2f} s")
    return 0 if all(r.passed for r in results) else 1
