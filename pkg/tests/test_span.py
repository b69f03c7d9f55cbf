import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from janus import (
    DegenerateSpanError,
    JanusState,
    SqueezeParams,
    aligned_optimum,
    covariance,
    equal_strength_coeffs,
    equal_strength_minimum,
    moment_set,
    span_char_poly,
    span_matrices,
    span_minimum,
)
from conftest import squeeze_params


GOLDEN = dict(r=1.0, s=0.9)


def test_golden_pair_values():
    opt = aligned_optimum(**GOLDEN)
    mats = span_matrices(SqueezeParams(1.0, 0.0), SqueezeParams(0.9, 0.0))
    assert opt.lambda_minus == pytest.approx(0.040941604284154748, rel=1e-12)
    assert opt.lambda_plus == pytest.approx(0.40776798018625865, rel=1e-12)
    assert opt.ratio == pytest.approx(-0.80049465580068224, rel=1e-12)
    assert mats.A == pytest.approx(0.5 * math.exp(-2.0), rel=1e-13)
    assert mats.B == pytest.approx(0.5 * math.exp(-1.8), rel=1e-13)
    assert mats.S.real == pytest.approx(1.0 / math.sqrt(math.cosh(0.1)), rel=1e-13)
    assert mats.S.imag == 0.0


def test_char_poly_root_residuals():
    xi, zeta = SqueezeParams(1.1, 0.4), SqueezeParams(0.6, -1.9)
    opt = span_minimum(xi, zeta)
    mats = span_matrices(xi, zeta)
    scale = max(abs(mats.A), abs(mats.B), abs(mats.C))
    assert abs(span_char_poly(mats, opt.lambda_minus)) < 1e-13 * scale**2
    assert abs(span_char_poly(mats, opt.lambda_plus)) < 1e-12 * scale**2


def test_p_axis_flips_interference_sign():
    xi, zeta = SqueezeParams(0.9, 0.3), SqueezeParams(0.5, 2.0)
    mq, mp = span_matrices(xi, zeta, "Q"), span_matrices(xi, zeta, "P")
    x = xi.x
    assert mq.A == pytest.approx((1 + x - 2 * math.sqrt(x) * math.cos(0.3)) / (2 * (1 - x)))
    assert mp.A == pytest.approx((1 + x + 2 * math.sqrt(x) * math.cos(0.3)) / (2 * (1 - x)))
    # The direct sum is axis-independent only in the absence of interference;
    # the Heisenberg floor still holds per constituent.
    assert mq.A * mp.A >= 0.25 - 1e-12
    with pytest.raises(ValueError):
        span_matrices(xi, zeta, "X")


def test_minimizer_coefficients_attain_lambda():
    xi, zeta = SqueezeParams(1.0, 0.0), SqueezeParams(0.9, 0.0)
    opt = span_minimum(xi, zeta)
    state = JanusState(xi, zeta, *opt.coefficients)
    cov = covariance(moment_set(state))
    assert cov.VQQ == pytest.approx(opt.lambda_minus, rel=1e-11)


@given(squeeze_params(), squeeze_params())
@settings(max_examples=80)
def test_span_minimum_bounds(xi, zeta):
    try:
        opt = span_minimum(xi, zeta)
    except DegenerateSpanError:
        assume(False)
        return
    mats = span_matrices(xi, zeta)
    # Pure constituents live in the span.
    assert opt.lambda_minus <= min(mats.A, mats.B) + 1e-12
    assert opt.lambda_plus >= opt.lambda_minus - 1e-15
    assert opt.lambda_minus > 0.0
    assert opt.discriminant >= 0.0
    # Random span directions cannot undercut the reported minimum.
    rng = np.random.default_rng(4242)
    for _ in range(6):
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        nrm = (
            abs(a) ** 2
            + abs(b) ** 2
            + 2.0 * (a * b.conjugate() * mats.S).real
        )
        if nrm < 1e-10:
            continue
        quad = (
            mats.A * abs(a) ** 2
            + mats.B * abs(b) ** 2
            + 2.0 * (a * b.conjugate() * mats.C).real
        )
        assert quad / nrm >= opt.lambda_minus - 1e-9 * max(1.0, abs(quad / nrm))


def test_aligned_beats_better_constituent():
    for r, s in [(1.0, 0.9), (0.8, 0.0), (1.4, 0.3), (0.2, 0.15)]:
        opt = aligned_optimum(r, s)
        assert opt.lambda_minus < 0.5 * math.exp(-2.0 * max(r, s))
        assert opt.ratio.imag == 0.0
        assert opt.ratio.real < 0.0


def test_aligned_squeezed_plus_vacuum_case():
    # r = 0.8 against bare vacuum still undercuts the constituent floor.
    opt = aligned_optimum(0.8, 0.0)
    assert opt.lambda_minus < 0.5 * math.exp(-1.6)


def test_degenerate_span_guards():
    p = SqueezeParams(0.7, 0.2)
    with pytest.raises(DegenerateSpanError):
        span_minimum(p, p)
    with pytest.raises(DegenerateSpanError):
        aligned_optimum(0.9, 0.9)


def test_orthonormalized_branch_opt_in():
    xi, zeta = SqueezeParams(0.5), SqueezeParams(0.5 + 1e-4)
    with pytest.raises(DegenerateSpanError):
        span_minimum(xi, zeta)  # default guard refuses |S| ~ 1 - 2.5e-9
    opt = span_minimum(xi, zeta, eps_span=1e-12)
    mats = span_matrices(xi, zeta)
    # Cancellation-free quadratic root as the cross-check.
    gamma = 1.0 - abs(mats.S) ** 2
    alpha = (mats.A + mats.B) - 2.0 * (mats.S.conjugate() * mats.C).real
    beta = mats.A * mats.B - abs(mats.C) ** 2
    lam_quad = 2.0 * beta / (alpha + math.sqrt(alpha * alpha - 4.0 * gamma * beta))
    assert opt.lambda_minus == pytest.approx(lam_quad, rel=1e-6)
    # Coefficients stay Gram-normalized to metric-conditioned accuracy only.
    a, b = opt.coefficients
    nrm = abs(a) ** 2 + abs(b) ** 2 + 2.0 * (a * b.conjugate() * mats.S).real
    assert nrm == pytest.approx(1.0, abs=1e-6)
    quad = (
        mats.A * abs(a) ** 2
        + mats.B * abs(b) ** 2
        + 2.0 * (a * b.conjugate() * mats.C).real
    )
    assert quad == pytest.approx(opt.lambda_minus, rel=1e-6)


def test_equal_strength_matches_generic_route():
    for r in (0.1, 0.7, 1.3):
        for delta in (0.3, 2.0, math.pi, 5.0):
            lam_c = equal_strength_minimum(r, 0.0, -delta)
            lam_g = span_minimum(
                SqueezeParams(r, 0.0), SqueezeParams(r, -delta)
            ).lambda_minus
            assert lam_c == pytest.approx(lam_g, rel=1e-10)


def test_equal_strength_small_delta_stability():
    # Delta = 1e-3 at r = 1.3 keeps |S| outside the default guard; the
    # closed route must track the generic one through the cancellation zone.
    lam_c = equal_strength_minimum(1.3, 0.0, -1e-3)
    lam_g = span_minimum(SqueezeParams(1.3, 0.0), SqueezeParams(1.3, -1e-3)).lambda_minus
    assert lam_c == pytest.approx(lam_g, rel=1e-9)


def test_equal_strength_even_in_delta():
    for r in (0.3, 0.9):
        assert equal_strength_minimum(r, 0.0, -2e-6) == pytest.approx(
            equal_strength_minimum(r, 0.0, 2e-6), rel=1e-13
        )


def test_equal_strength_collapse_guard():
    with pytest.raises(DegenerateSpanError):
        equal_strength_minimum(0.8, 0.0, 1e-8)
    with pytest.raises(DegenerateSpanError):
        equal_strength_minimum(0.8, 0.1, 0.1 - 2.0 * math.pi)  # Delta = 2 pi k


@given(
    st.floats(0.05, 1.5, allow_nan=False),
    st.floats(0.1, 2.0 * math.pi - 0.1, allow_nan=False),
)
@settings(max_examples=60)
def test_equal_strength_route_agreement_property(r, delta):
    lam_c = equal_strength_minimum(r, 0.0, -delta)
    lam_g = span_minimum(SqueezeParams(r, 0.0), SqueezeParams(r, -delta)).lambda_minus
    assert lam_c == pytest.approx(lam_g, rel=1e-10, abs=1e-13)


def test_equal_strength_coeffs_consistency():
    co = equal_strength_coeffs(0.9, 0.4, -1.3)
    mats = span_matrices(SqueezeParams(0.9, 0.4), SqueezeParams(0.9, -1.3))
    gamma = 1.0 - abs(mats.S) ** 2
    alpha = (mats.A + mats.B) - 2.0 * (mats.S.conjugate() * mats.C).real
    beta = mats.A * mats.B - abs(mats.C) ** 2
    assert co.gamma_c == pytest.approx(gamma, rel=1e-12)
    assert co.alpha_c == pytest.approx(alpha, rel=1e-12)
    assert co.beta_c == pytest.approx(beta, rel=1e-10)
    assert co.NQ_abs2 >= 0.0
