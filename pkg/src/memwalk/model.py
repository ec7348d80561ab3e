"""Parameters, trajectory sufficient statistics and the one-step law.

The next step of the walk depends on its history only through the counts
of past +1, -1 and 0 steps, so a trajectory is summarised by a
:class:`WalkState` and every transition costs O(1).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from .errors import ParameterError

SUM_TOL = 1e-12


class Step(IntEnum):
    MINUS = -1
    ZERO = 0
    PLUS = 1


@dataclass(frozen=True)
class Parameters:
    """Probability quadruple of the walk.

    p : follow a recalled nonzero step
    q : oppose it
    r : rest instead
    s : first step goes right
    """

    p: float
    q: float
    r: float
    s: float = 0.5

    def __post_init__(self):
        for name in ("p", "q", "r", "s"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ParameterError(f"{name}={v!r} is not a probability in [0, 1]")
        total = self.p + self.q + self.r
        if abs(total - 1.0) > SUM_TOL:
            raise ParameterError(
                f"p + q + r must equal 1 (got {total!r}, off by {total - 1.0:.3g})"
            )

    @property
    def gamma(self) -> float:
        """Memory asymmetry p - q."""
        return self.p - self.q

    @classmethod
    def normalized(cls, p: float, q: float, r: float, s: float = 0.5) -> "Parameters":
        """Rescale nonnegative weights (p, q, r) to sum to one."""
        total = p + q + r
        if min(p, q, r) < 0 or total <= 0:
            raise ParameterError("weights must be nonnegative with a positive sum")
        return cls(p / total, q / total, 1.0 - p / total - q / total, s)

    @classmethod
    def from_gamma(cls, gamma: float, r: float, s: float = 0.5) -> "Parameters":
        """Build parameters from the asymmetry and the rest probability."""
        if not (0.0 <= r <= 1.0) or abs(gamma) > 1.0 - r + SUM_TOL:
            raise ParameterError(f"gamma={gamma!r} infeasible with r={r!r}")
        p = min(max(0.5 * (1.0 - r + gamma), 0.0), 1.0)
        q = min(max(0.5 * (1.0 - r - gamma), 0.0), 1.0)
        return cls(p, q, r, s)


@dataclass(frozen=True)
class WalkState:
    """Counts of past steps after ``t`` steps; position is ``n_plus - n_minus``."""

    t: int
    n_plus: int
    n_minus: int
    n_zero: int = 0

    def __post_init__(self):
        if self.t < 1:
            raise ParameterError(f"state needs t >= 1 (got t={self.t})")
        if min(self.n_plus, self.n_minus, self.n_zero) < 0:
            raise ParameterError("step counts must be nonnegative")
        if self.n_plus + self.n_minus + self.n_zero != self.t:
            raise ParameterError("step counts must sum to t")
        if self.n_plus + self.n_minus == 0:
            raise ParameterError("the first step never rests, so n_plus + n_minus >= 1")

    @property
    def x(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def moving(self) -> int:
        """Number of nonzero steps so far (sum of squared steps)."""
        return self.n_plus + self.n_minus

    @classmethod
    def initial(cls, first: int) -> "WalkState":
        if first == 1:
            return cls(1, 1, 0, 0)
        if first == -1:
            return cls(1, 0, 1, 0)
        raise ParameterError("first step must be +1 or -1")

    def mirrored(self) -> "WalkState":
        return WalkState(self.t, self.n_minus, self.n_plus, self.n_zero)


@dataclass(frozen=True)
class StepDistribution:
    p_plus: float
    p_zero: float
    p_minus: float

    def __post_init__(self):
        for v in (self.p_plus, self.p_zero, self.p_minus):
            if not (-SUM_TOL <= v <= 1.0 + SUM_TOL):
                raise ParameterError(f"step probability {v!r} outside [0, 1]")
        total = self.p_plus + self.p_zero + self.p_minus
        if abs(total - 1.0) > SUM_TOL:
            raise ParameterError(f"step probabilities sum to {total!r}")

    def __getitem__(self, step: int) -> float:
        return {1: self.p_plus, 0: self.p_zero, -1: self.p_minus}[int(step)]

    def as_tuple(self) -> tuple[float, float, float]:
        """(p_plus, p_zero, p_minus)."""
        return (self.p_plus, self.p_zero, self.p_minus)


def first_step_distribution(params: Parameters) -> StepDistribution:
    return StepDistribution(params.s, 0.0, 1.0 - params.s)


def step_distribution(params: Parameters, state: WalkState) -> StepDistribution:
    """Law of step ``t + 1`` given the counts after ``t`` steps.

    A past time is recalled uniformly; a recalled +-1 is followed with
    probability p, opposed with q, replaced by a rest with r, and a
    recalled rest is always copied.  Written with integer count
    numerators, which is exact up to a single rounding per component.
    """
    t = state.t
    p, q, r = params.p, params.q, params.r
    p_plus = (state.n_plus * p + state.n_minus * q) / t
    p_minus = (state.n_minus * p + state.n_plus * q) / t
    p_zero = (state.moving * r + state.n_zero) / t
    return StepDistribution(p_plus, p_zero, p_minus)


def step_distribution_reference(params: Parameters, state: WalkState) -> StepDistribution:
    """Same law as :func:`step_distribution`, built as an explicit mixture.

    First choose the category of the recalled step with its empirical
    frequency, then apply follow / oppose / rest.  Only used to cross-check
    the count form.
    """
    actions = {
        1: {1: params.p, -1: params.q, 0: params.r},
        -1: {-1: params.p, 1: params.q, 0: params.r},
        0: {0: 1.0},
    }
    counts = {1: state.n_plus, -1: state.n_minus, 0: state.n_zero}
    law = {1: 0.0, 0: 0.0, -1: 0.0}
    for recalled, n in counts.items():
        if n == 0:
            continue
        weight = n / state.t
        for step, prob in actions[recalled].items():
            law[step] += weight * prob
    return StepDistribution(law[1], law[0], law[-1])


def apply_step(state: WalkState, step: int) -> WalkState:
    step = Step(step)
    if step is Step.PLUS:
        return WalkState(state.t + 1, state.n_plus + 1, state.n_minus, state.n_zero)
    if step is Step.MINUS:
        return WalkState(state.t + 1, state.n_plus, state.n_minus + 1, state.n_zero)
    return WalkState(state.t + 1, state.n_plus, state.n_minus, state.n_zero + 1)
