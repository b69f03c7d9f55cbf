"""Quadrature covariance, principal squeezing, and displacement shifts.

Conventions: [Q, P] = i and vacuum variance 1/2 on both quadratures.
With the central moments nbar = <a^dag a> - |<a>|^2 and m = <a^2> - <a>^2,

    V_QQ = 1/2 + nbar + Re m,
    V_PP = 1/2 + nbar - Re m,
    V_QP = Im m,

and the rotated quadrature X_phi = Q cos(phi) + P sin(phi) has variance
1/2 + nbar + Re(m e^{-2 i phi}).  The principal values are

    V_min/max = 1/2 + nbar -+ |m|,    phi* = arg(m)/2 + pi/2  (mod pi),

with phi* reported in [0, pi) and set to 0 for isotropic states (m = 0).
The dimensionless depth u = 2 V_min (u < 1 iff squeezed below vacuum)
and S_dB = -10 log10(u) summarize the squeezing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .moments import MomentSet


@dataclass(frozen=True)
class CovarianceSummary:
    VQQ: float
    VPP: float
    VQP: float
    Vmin: float
    Vmax: float
    phi_star: float
    u: float
    S_dB: float


def covariance(mset: MomentSet) -> CovarianceSummary:
    nbar, m = mset.nbar, mset.m
    VQQ = 0.5 + nbar + m.real
    VPP = 0.5 + nbar - m.real
    Vmin = 0.5 + nbar - abs(m)
    Vmax = 0.5 + nbar + abs(m)
    if m == 0:
        phi_star = 0.0
    else:
        phi_star = (0.5 * cmath.phase(m) + 0.5 * math.pi) % math.pi
        if phi_star >= math.pi:  # fmod rounding can land exactly on pi
            phi_star = 0.0
    u = 2.0 * Vmin
    return CovarianceSummary(
        VQQ=VQQ,
        VPP=VPP,
        VQP=m.imag,
        Vmin=Vmin,
        Vmax=Vmax,
        phi_star=phi_star,
        u=u,
        S_dB=-10.0 * math.log10(u),
    )


def rotated_variance(mset: MomentSet, phi: float) -> float:
    """Var(Q cos phi + P sin phi) = 1/2 + nbar + Re(m e^{-2 i phi})."""
    return 0.5 + mset.nbar + (mset.m * cmath.exp(-2j * phi)).real


def displace(mset: MomentSet, alpha0: complex) -> MomentSet:
    """Moments of D(alpha0) |psi> for an even-parity input (mean_a = 0).

    Raw moments shift polynomially,

        N1' = N1 + |a0|^2,
        M2' = M2 + a0^2,
        N2' = N2 + 2 Re(conj(a0)^2 M2) + 4 |a0|^2 N1 + |a0|^4,
        M4' = M4 + 6 a0^2 M2 + a0^4,

    while the central pair (nbar, m) — and hence every covariance-based
    quantity — is displacement invariant.
    """
    if mset.mean_a != 0:
        raise ValueError("displace expects an undisplaced moment set (mean_a = 0)")
    a0 = complex(alpha0)
    mag2 = abs(a0) ** 2
    N1 = mset.N1 + mag2
    M2 = mset.M2 + a0 * a0
    N2 = (
        mset.N2
        + 2.0 * (a0.conjugate() ** 2 * mset.M2).real
        + 4.0 * mag2 * mset.N1
        + mag2 * mag2
    )
    M4 = mset.M4 + 6.0 * a0 * a0 * mset.M2 + a0**4
    return MomentSet(N1=N1, N2=N2, M2=M2, M4=M4, nbar=mset.nbar, m=mset.m, mean_a=a0)
