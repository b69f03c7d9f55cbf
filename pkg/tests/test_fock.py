import math

import numpy as np
import pytest

from janus import (
    CutoffInsufficientError,
    JanusState,
    SqueezeParams,
    diagonal_moments,
    fock_janus,
    fock_squeezed,
    ladder_apply,
    oracle_displace,
    oracle_moments,
    oracle_sandwich,
    solve_coefficients,
)


def test_vacuum_vector():
    v = fock_squeezed(SqueezeParams(0.0))
    assert v.amplitudes[0] == 1.0
    assert np.all(v.amplitudes[1:] == 0.0)
    assert v.tail_bound == 0.0


def test_amplitudes_are_read_only():
    v = fock_squeezed(SqueezeParams(0.4))
    with pytest.raises(ValueError):
        v.amplitudes[0] = 5.0


def test_squeezed_amplitudes_known_entries():
    p = SqueezeParams(0.8, 0.3)
    v = fock_squeezed(p)
    c0 = (1.0 - p.x) ** 0.25
    assert v.amplitudes[0] == pytest.approx(c0, rel=1e-14)
    assert v.amplitudes[2] == pytest.approx(-c0 * p.alpha / math.sqrt(2.0), rel=1e-13)
    assert np.all(v.amplitudes[1::2] == 0.0)
    assert np.linalg.norm(v.amplitudes) == pytest.approx(1.0, abs=1e-12)


def test_adaptive_cutoff_grows_with_r():
    small = fock_squeezed(SqueezeParams(0.2))
    big = fock_squeezed(SqueezeParams(1.5))
    assert small.cutoff == 64
    assert big.cutoff > small.cutoff
    assert big.tail_bound < 1e-12
    assert np.linalg.norm(big.amplitudes) == pytest.approx(1.0, abs=1e-11)


def test_forced_cutoff_validation():
    with pytest.raises(ValueError):
        fock_squeezed(SqueezeParams(0.5), cutoff=65)
    with pytest.raises(ValueError):
        fock_squeezed(SqueezeParams(0.5), cutoff=-2)
    with pytest.raises(CutoffInsufficientError):
        fock_squeezed(SqueezeParams(1.5), cutoff=64)


def test_env_cap_honored(monkeypatch):
    monkeypatch.setenv("JANUS_MAX_CUTOFF", "64")
    with pytest.raises(CutoffInsufficientError):
        fock_squeezed(SqueezeParams(2.0))
    monkeypatch.setenv("JANUS_MAX_CUTOFF", "1")
    with pytest.raises(ValueError):
        fock_squeezed(SqueezeParams(2.0))
    monkeypatch.delenv("JANUS_MAX_CUTOFF")
    assert fock_squeezed(SqueezeParams(2.0)).tail_bound < 1e-12


def test_ladder_apply_elementary():
    e3 = np.zeros(6, dtype=complex)
    e3[3] = 1.0
    down = ladder_apply(e3, 0, 1)
    up = ladder_apply(e3, 1, 0)
    assert down[2] == pytest.approx(math.sqrt(3.0), rel=1e-14)
    assert up[4] == pytest.approx(2.0, rel=1e-14)
    assert np.count_nonzero(down) == 1 and np.count_nonzero(up) == 1
    # a a^dag = n + 1 on a number state.
    both = ladder_apply(ladder_apply(e3, 1, 0), 0, 1)
    assert both[3] == pytest.approx(4.0, rel=1e-14)
    with pytest.raises(ValueError):
        ladder_apply(e3, -1, 0)


def test_oracle_moments_match_closed_forms():
    p = SqueezeParams(0.9, 1.3)
    om = oracle_moments(fock_squeezed(p))
    d = diagonal_moments(p)
    assert om.N1 == pytest.approx(d.N1, rel=1e-11)
    assert om.N2 == pytest.approx(d.N2, rel=1e-11)
    assert om.M2 == pytest.approx(d.M2, rel=1e-11)
    assert om.M4 == pytest.approx(d.M4, rel=1e-10)
    assert om.mean_a == 0j


def test_oracle_sandwich_number_operator():
    p = SqueezeParams(0.7)
    v = fock_squeezed(p)
    assert oracle_sandwich(v, v, 1, 1) == pytest.approx(
        math.sinh(0.7) ** 2, rel=1e-11
    )


def test_fock_janus_norm_and_mixing():
    st_ = solve_coefficients(SqueezeParams(0.6, 0.2), SqueezeParams(1.0, -2.0), 0.5, 0.9)
    v = fock_janus(st_)
    assert np.linalg.norm(v.amplitudes) == pytest.approx(1.0, abs=1e-10)
    va = fock_squeezed(st_.xi, v.cutoff)
    vb = fock_squeezed(st_.zeta, v.cutoff)
    mix = st_.chi * va.amplitudes + st_.eta * vb.amplitudes
    assert np.allclose(v.amplitudes, mix, rtol=0, atol=1e-15)


def test_fock_janus_forced_small_cutoff_rejected():
    st_ = solve_coefficients(SqueezeParams(1.4), SqueezeParams(1.2), 0.4, 0.0)
    with pytest.raises(CutoffInsufficientError):
        fock_janus(st_, cutoff=32)


def test_displaced_vacuum_is_coherent():
    a0 = 0.8 - 0.3j
    w = oracle_displace(fock_squeezed(SqueezeParams(0.0)), a0)
    head = np.array(
        [
            math.exp(-abs(a0) ** 2 / 2) * a0**k / math.sqrt(math.factorial(k))
            for k in range(41)
        ]
    )
    assert np.allclose(w.amplitudes[:41], head, rtol=0, atol=1e-10)
    assert np.all(np.abs(w.amplitudes[41:]) < 1e-10)


def test_displacement_moves_mean_keeps_central_moments():
    p = SqueezeParams(0.5)
    w = oracle_displace(fock_squeezed(p, 256), 1.0 + 0j)
    om = oracle_moments(w)
    assert om.mean_a == pytest.approx(1.0 + 0j, abs=1e-9)
    assert om.nbar == pytest.approx(math.sinh(0.5) ** 2, rel=1e-9)
    assert om.m == pytest.approx(-0.5 * math.sinh(1.0), rel=1e-9)


def test_displace_zero_is_identity():
    v = fock_squeezed(SqueezeParams(0.3))
    assert oracle_displace(v, 0j) is v
