import math

import pytest
from hypothesis import given, settings, strategies as st

from janus import (
    JanusState,
    SqueezeParams,
    aux_t_threshold,
    auxiliary_family,
    beats_benchmark,
    benchmarks,
    covariance,
    diagonal_moments,
    exact_family,
    exact_family_state,
    from_ratio,
    g2,
    moment_set,
    no_go_bound,
    phase_qfi,
    phase_qfi_squeezed,
    phase_qfi_squeezed_at_u,
    quad_qfi_squeezed_at_u,
    quadratic_qfi,
    quadratic_qfi_envelope,
    vartheta_star,
)
from conftest import janus_states


def _vacuum_mset():
    vac = SqueezeParams(0.0)
    return moment_set(JanusState(vac, vac, 1.0 + 0j, 0j))


def test_vacuum_qfi():
    mset = _vacuum_mset()
    assert phase_qfi(mset) == 0.0
    # Vacuum responds isotropically to any stretch axis with F = 2.
    for vt in (0.0, 0.4, math.pi / 2):
        assert quadratic_qfi(mset, vt) == pytest.approx(2.0, rel=1e-14)
    assert quadratic_qfi_envelope(mset) == pytest.approx(2.0, rel=1e-14)
    assert vartheta_star(mset) == 0.0
    assert no_go_bound(0.0) == pytest.approx(0.5)


def test_squeezed_vacuum_qfi_closed_forms():
    r = 0.6
    mset = diagonal_moments(SqueezeParams(r, 0.0))
    nbar = math.sinh(r) ** 2
    assert phase_qfi(mset) == pytest.approx(8.0 * nbar * (nbar + 1.0), rel=1e-12)
    assert phase_qfi(mset) == pytest.approx(phase_qfi_squeezed(nbar), rel=1e-12)
    # Envelope equals the matched-depth benchmark 2 cosh^2(2r) for the
    # squeezed state itself, with the optimum axis on the squeeze axis.
    env = quadratic_qfi_envelope(mset)
    assert env == pytest.approx(2.0 * math.cosh(2 * r) ** 2, rel=1e-12)
    u = covariance(mset).u
    assert u == pytest.approx(math.exp(-2 * r), rel=1e-12)
    assert env == pytest.approx(quad_qfi_squeezed_at_u(u), rel=1e-11)
    assert phase_qfi(mset) == pytest.approx(phase_qfi_squeezed_at_u(u), rel=1e-11)


def test_squeezed_state_never_flags_against_itself():
    for r in (0.2, 0.7, 1.3):
        rep = benchmarks(diagonal_moments(SqueezeParams(r, 0.0)))
        assert not rep.not_squeezed
        assert rep.adv_phase_fixed_nbar is False
        assert rep.adv_phase_fixed_u is False
        assert rep.adv_quad_fixed_u is False


def test_benchmark_masked_when_not_squeezed():
    # theta = pi squeezes P, leaving Q anti-squeezed... u stays below 1
    # for any pure squeezed state, so use a superposition with u > 1.
    st_ = from_ratio(SqueezeParams(0.6, 0.0), SqueezeParams(0.6, math.pi), 1.0)
    rep = benchmarks(moment_set(st_))
    assert rep.u > 1.0
    assert rep.not_squeezed
    assert rep.F_quad_sq_at_u is None
    assert rep.adv_quad_fixed_u is None


def test_beats_benchmark_guard():
    assert not beats_benchmark(1.0, 1.0)
    assert not beats_benchmark(1.0 + 1e-12, 1.0)
    assert beats_benchmark(1.0 + 1e-6, 1.0)
    assert not beats_benchmark(0.9, 1.0)


@given(janus_states())
@settings(max_examples=80)
def test_axis_sum_rule(state):
    mset = moment_set(state)
    total = 4.0 * (mset.N2 + 2.0 * mset.N1 + 1.0 - abs(mset.M2) ** 2)
    for vt in (0.0, 0.37, 1.1):
        lhs = quadratic_qfi(mset, vt) + quadratic_qfi(mset, vt + math.pi / 2)
        assert lhs == pytest.approx(total, rel=1e-12, abs=1e-12)


@given(janus_states())
@settings(max_examples=80)
def test_envelope_majorizes_and_is_attained(state):
    mset = moment_set(state)
    env = quadratic_qfi_envelope(mset)
    vt0 = vartheta_star(mset)
    assert quadratic_qfi(mset, vt0) == pytest.approx(env, rel=1e-12, abs=1e-12)
    for k in range(8):
        assert quadratic_qfi(mset, k * math.pi / 8) <= env + 1e-10


@given(janus_states())
@settings(max_examples=80)
def test_phase_advantage_iff_super_squeezed_g2(state):
    mset = moment_set(state)
    if mset.N1 < 1e-5:
        return
    margin = phase_qfi(mset) - phase_qfi_squeezed(mset.N1)
    g2_margin = g2(mset) - (3.0 + 1.0 / mset.N1)
    # F - 8 nbar (nbar+1) = 4 nbar^2 [g2 - (3 + 1/nbar)] identically.
    assert margin == pytest.approx(
        4.0 * mset.N1**2 * g2_margin, rel=1e-9, abs=1e-9
    )
    if abs(margin) > 1e-8 * max(1.0, phase_qfi(mset)):
        assert (margin > 0) == (g2_margin > 0)


@given(janus_states())
@settings(max_examples=100)
def test_no_go_bound_holds(state):
    mset = moment_set(state)
    assert covariance(mset).Vmin >= no_go_bound(mset.N1) - 1e-10


def test_no_go_saturated_by_squeezed():
    for r in (0.1, 0.8, 1.5):
        mset = diagonal_moments(SqueezeParams(r, 0.0))
        assert covariance(mset).Vmin == pytest.approx(no_go_bound(mset.N1), abs=1e-9)


def test_no_go_rejects_negative_nbar():
    with pytest.raises(ValueError):
        no_go_bound(-0.1)


def test_auxiliary_family_matches_moment_route():
    s = 0.8
    for t in (-5.0, -0.9, 0.7, 2.0):
        p = auxiliary_family(s, t)
        mset = moment_set(from_ratio(SqueezeParams(0.0), SqueezeParams(s, 0.0), t))
        assert p.F_phase == pytest.approx(phase_qfi(mset), rel=1e-12)
        assert p.DQ2 == pytest.approx(covariance(mset).VQQ, rel=1e-12)
        assert p.Norm == pytest.approx(1 + t * t + 2 * p.kappa * t, rel=1e-14)
        assert p.Lambda == pytest.approx(t * t / p.Norm, rel=1e-14)


def test_auxiliary_family_thresholds():
    s = 0.8
    th = aux_t_threshold(s)
    kappa = 1.0 / math.sqrt(math.cosh(s))
    assert th == pytest.approx(-(1.0 + math.exp(1.6)) / (2.0 * kappa), rel=1e-14)
    # Variance break-even is exact at the threshold.
    at = auxiliary_family(s, th)
    assert at.DQ2 == pytest.approx(0.5 * math.exp(-2 * s), rel=1e-12)
    assert auxiliary_family(s, th - 0.01).dq_beats_squeezed
    assert not auxiliary_family(s, th + 0.01).dq_beats_squeezed
    # QFI advantage switches on earlier, where Lambda first exceeds 1.
    t_qfi = -1.0 / (2.0 * kappa)
    assert auxiliary_family(s, t_qfi - 0.01).qfi_beats_squeezed
    assert not auxiliary_family(s, t_qfi + 0.01).qfi_beats_squeezed
    assert auxiliary_family(s, t_qfi - 0.01).Lambda > 1.0
    # Below the variance threshold both advantages coexist.
    both = auxiliary_family(s, th - 0.5)
    assert both.dq_beats_squeezed and both.qfi_beats_squeezed


def test_auxiliary_family_limits():
    s = 0.7
    assert auxiliary_family(s, 0.0).F_phase == 0.0
    assert auxiliary_family(s, 0.0).DQ2 == pytest.approx(0.5)
    far = auxiliary_family(s, -1e6)
    ns = math.sinh(s) ** 2
    assert far.F_phase == pytest.approx(8 * ns * (ns + 1), rel=1e-5)
    assert far.DQ2 == pytest.approx(0.5 * math.exp(-2 * s), rel=1e-5)
    with pytest.raises(ValueError):
        auxiliary_family(0.0, 1.0)
    with pytest.raises(ValueError):
        aux_t_threshold(-0.2)


def test_exact_family_gap_formula():
    for em, de, s in [(0.3, 0.0, 0.9), (0.7, 2.1, 0.5), (0.95, -1.0, 1.4)]:
        rep = exact_family(em, de, s)
        nbar = em * em * math.sinh(s) ** 2
        assert rep.nbar == pytest.approx(nbar, rel=1e-12)
        gap = rep.F_phase - phase_qfi_squeezed(nbar)
        assert gap == pytest.approx(12.0 * nbar**2 * (1.0 / em**2 - 1.0), rel=1e-12)
        assert rep.adv_phase_fixed_nbar


def test_exact_family_delta_independent():
    em, s = 0.55, 1.1
    base = exact_family(em, 0.0, s).F_phase
    for de in (0.7, 1.9, math.pi, 5.5):
        assert exact_family(em, de, s).F_phase == pytest.approx(base, rel=1e-12)
        st_ = exact_family_state(em, de, s)
        assert abs(st_.eta) == pytest.approx(em, rel=1e-12)


def test_exact_family_domain():
    with pytest.raises(ValueError):
        exact_family(0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        exact_family(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        exact_family(0.5, 0.0, 0.0)
