import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from memwalk import (
    ParameterError,
    Parameters,
    StepDistribution,
    WalkState,
    apply_step,
    first_step_distribution,
    step_distribution,
    step_distribution_reference,
)


def urn_law(params, history):
    """Recall a past step uniformly from the explicit history, then act on it."""
    law = {1: 0.0, 0: 0.0, -1: 0.0}
    for recalled in history:
        w = 1.0 / len(history)
        if recalled == 0:
            law[0] += w
        else:
            law[recalled] += w * params.p
            law[-recalled] += w * params.q
            law[0] += w * params.r
    return law[1], law[0], law[-1]


def literal_law(params, state):
    """Direct evaluation of the conditional-probability formula over sigma in {-1,0,1}."""
    t, gamma, r = state.t, params.gamma, params.r
    out = []
    for sigma in (1, 0, -1):
        acc = 0.0
        for sk, n in ((1, state.n_plus), (-1, state.n_minus), (0, state.n_zero)):
            acc += n * (sk * sk * (3 * sigma * sigma - 2) * (1 - r) + sigma * sk * gamma)
        out.append(1 - sigma * sigma + acc / (2 * t))
    return tuple(out)


@st.composite
def params_st(draw):
    w = draw(st.tuples(*[st.floats(0.0, 1.0) for _ in range(3)]).filter(lambda w: sum(w) > 1e-3))
    total = sum(w)
    p, q = w[0] / total, w[1] / total
    return Parameters(p, q, max(1.0 - p - q, 0.0), draw(st.floats(0.0, 1.0)))


@st.composite
def state_st(draw, t_max=10**6):
    t = draw(st.integers(1, t_max))
    if t == 1:
        return WalkState.initial(draw(st.sampled_from([-1, 1])))
    moving = draw(st.integers(1, t))
    n_plus = draw(st.integers(0, moving))
    return WalkState(t, n_plus, moving - n_plus, t - moving)


class TestParameters:
    def test_gamma(self):
        assert Parameters(0.5, 0.3, 0.2).gamma == pytest.approx(0.2)

    @pytest.mark.parametrize("pqr", [(0.5, 0.3, 0.3), (0.5, 0.3, 0.1), (1.2, -0.2, 0.0)])
    def test_rejects_bad_sums_and_ranges(self, pqr):
        with pytest.raises(ParameterError):
            Parameters(*pqr)

    def test_rejects_bad_s(self):
        with pytest.raises(ParameterError):
            Parameters(0.5, 0.3, 0.2, 1.5)

    def test_sum_tolerance(self):
        Parameters(0.5, 0.3, 0.2 + 5e-13)
        with pytest.raises(ParameterError):
            Parameters(0.5, 0.3, 0.2 + 1e-11)

    def test_normalized_only_on_request(self):
        params = Parameters.normalized(5, 3, 2, 0.7)
        assert (params.p, params.q, params.r, params.s) == pytest.approx((0.5, 0.3, 0.2, 0.7))

    def test_from_gamma(self):
        params = Parameters.from_gamma(0.35, 0.1)
        assert (params.p, params.q) == pytest.approx((0.625, 0.275))


class TestWalkState:
    def test_invariants(self):
        with pytest.raises(ParameterError):
            WalkState(0, 0, 0, 0)
        with pytest.raises(ParameterError):
            WalkState(3, 1, 1, 0)
        with pytest.raises(ParameterError):
            WalkState(1, 0, 0, 1)
        assert WalkState(4, 3, 1, 0).x == 2


def test_first_step_distribution():
    assert first_step_distribution(Parameters(0.5, 0.3, 0.2, 1.0)).as_tuple() == (1.0, 0.0, 0.0)
    assert first_step_distribution(Parameters(0.5, 0.3, 0.2, 0.5)).as_tuple() == (0.5, 0.0, 0.5)
    d = first_step_distribution(Parameters(0.5, 0.3, 0.2, 0.7))
    # half of (1 + (2s-1) sigma)
    assert d.p_plus == pytest.approx(0.5 * (1 + 0.4))
    assert d.p_minus == pytest.approx(0.5 * (1 - 0.4))
    assert d.p_zero == 0.0


P = Parameters(0.5, 0.3, 0.2)


@pytest.mark.parametrize(
    "state, history",
    [
        (WalkState(3, 2, 1, 0), [1, 1, -1]),
        (WalkState(1, 1, 0, 0), [1]),
        (WalkState(2, 1, 0, 1), [1, 0]),
    ],
)
def test_step_distribution_examples(state, history):
    expected = urn_law(P, history)
    got = step_distribution(P, state).as_tuple()
    ref = step_distribution_reference(P, state).as_tuple()
    assert got == pytest.approx(expected, abs=1e-15)
    assert ref == pytest.approx(expected, abs=1e-15)


def test_step_distribution_frozen_values():
    d = step_distribution(P, WalkState(3, 2, 1, 0))
    assert d.as_tuple() == pytest.approx((1.3 / 3, 0.2, 1.1 / 3), abs=1e-15)
    assert step_distribution(P, WalkState(2, 1, 0, 1)).as_tuple() == pytest.approx((0.25, 0.6, 0.15))
    assert step_distribution(P, WalkState(1, 1, 0, 0)).as_tuple() == pytest.approx((0.5, 0.2, 0.3))


def test_pure_persistence():
    d = step_distribution_reference(Parameters(1.0, 0.0, 0.0), WalkState(5, 5, 0, 0))
    assert d.as_tuple() == (1.0, 0.0, 0.0)


def test_no_rest_without_r():
    params = Parameters(0.7, 0.3, 0.0)
    for state in (WalkState(4, 3, 1, 0), WalkState(9, 2, 7, 0)):
        assert step_distribution(params, state).p_zero == 0.0
        assert step_distribution_reference(params, state).p_zero == 0.0


def test_apply_step():
    s1 = WalkState(1, 1, 0, 0)
    assert apply_step(s1, -1) == WalkState(2, 1, 1, 0)
    assert apply_step(s1, 0) == WalkState(2, 1, 0, 1)
    s3 = apply_step(WalkState(2, 1, 0, 1), 1)
    assert s3 == WalkState(3, 2, 0, 1) and s3.x == 2
    with pytest.raises(ValueError):
        apply_step(s1, 2)


def test_step_distribution_validates():
    with pytest.raises(ParameterError):
        StepDistribution(0.5, 0.5, 0.5)


@settings(max_examples=1000, deadline=None)
@given(params_st(), state_st())
def test_count_form_matches_mixture_and_literal(params, state):
    a = np.array(step_distribution(params, state).as_tuple())
    b = np.array(step_distribution_reference(params, state).as_tuple())
    c = np.array(literal_law(params, state))
    assert np.max(np.abs(a - b)) <= 1e-12
    assert np.max(np.abs(a - c)) <= 1e-12
    assert abs(a.sum() - 1.0) <= 1e-12


@settings(max_examples=300, deadline=None)
@given(params_st(), state_st())
def test_mirror_symmetry(params, state):
    d = step_distribution(params, state)
    m = step_distribution(params, state.mirrored())
    assert m.p_plus == pytest.approx(d.p_minus, abs=1e-15)
    assert m.p_minus == pytest.approx(d.p_plus, abs=1e-15)
    assert m.p_zero == d.p_zero


@settings(max_examples=300, deadline=None)
@given(params_st(), state_st(t_max=10**4))
def test_rest_mass_grows_under_rest(params, state):
    before = step_distribution(params, state).p_zero
    after = step_distribution(params, apply_step(state, 0)).p_zero
    assert after >= before - 1e-15


def test_rest_mass_closed_form():
    # p_zero = 1 - (1 - r) * (moving steps) / t
    state = WalkState(10, 4, 3, 3)
    assert step_distribution(P, state).p_zero == pytest.approx(1 - 0.8 * 7 / 10)
    assert math.isclose(sum(step_distribution(P, state).as_tuple()), 1.0, abs_tol=1e-15)
