"""Fixed-axis variance minimization over a two-constituent span.

For |psi> = chi|xi> + eta|zeta> the Q (or P) variance is the generalized
Rayleigh quotient c^dag M c / c^dag G c of the coefficient vector
c = (chi, eta) with the 2x2 pencil

    M = [[A, conj(C)], [C, B]],        G = [[1, conj(S)], [S, 1]],

where A, B are the constituent variances, C = <zeta| X^2 |xi> the cross
element, and S the overlap.  In the bounded variables,

    A_Q = (1 + x - 2 sqrt(x) cos theta) / (2 (1-x)),
    C_Q = pref (1 + z - (sqrt(x) e^{i theta} + sqrt(y) e^{-i phi}))
          / (2 (1-z)^{3/2}),

with the P-axis elements obtained by flipping the sign in front of the
sqrt(x), sqrt(y) terms.  The span minimum is the smaller root of

    gamma lam^2 - alpha lam + beta = 0,
    gamma = 1 - |S|^2,
    alpha = (A + B) - 2 Re(conj(S) C),
    beta  = A B - |C|^2,

evaluated in the cancellation-free forms lam_- = 2 beta / (alpha + sqrt(disc)),
lam_+ = (alpha + sqrt(disc)) / (2 gamma).  The minimizing ratio
t = eta/chi solves the first pencil row, t = -(A - lam_-)/(conj(C) - lam_- conj(S)),
switching to the second row when that denominator degenerates.

Near-degenerate spans (|S| -> 1) make the closed quadratic lose
significance; past a fixed threshold the pencil is first orthonormalized
through the Cholesky factor of G and handed to a Hermitian eigensolver.
With the default eps_span the degeneracy guard triggers before that
branch, so it is reachable only for callers that lower eps_span
explicitly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .states import DegenerateSpanError, SqueezeParams, overlap

# Default span-degeneracy guard: |S| >= 1 - EPS_SPAN is refused.
EPS_SPAN = 1e-8
# Collapsed-span guard for the equal-strength route (Delta = 0 mod 2pi).
EPS_DELTA = 1e-6

# Opt-in orthonormalized path threshold (see module docstring).
_CHOL_THRESHOLD = 1.0 - 1e-8
# Ratio extraction switches pencil rows below this denominator magnitude.
_RATIO_DEN_TOL = 1e-13
# Discriminants above this floor are rounding noise and clamp to zero.
_DISC_CLAMP = -1e-12


@dataclass(frozen=True)
class SpanMatrices:
    """Pencil data (M, G) for one axis: M = [[A, C*], [C, B]], G = [[1, S*], [S, 1]]."""

    A: float
    B: float
    C: complex
    S: complex


@dataclass(frozen=True)
class SpanOptimum:
    lambda_minus: float
    lambda_plus: float
    ratio: complex
    coefficients: tuple[complex, complex]
    discriminant: float


@dataclass(frozen=True)
class EqualStrengthCoeffs:
    """Quadratic coefficients of the r = s specialization (Q axis)."""

    alpha_c: float
    beta_c: float
    gamma_c: float
    NQ_abs2: float


def span_matrices(xi: SqueezeParams, zeta: SqueezeParams, axis: str = "Q") -> SpanMatrices:
    if axis not in ("Q", "P"):
        raise ValueError(f"axis must be 'Q' or 'P', got {axis!r}")
    sgn = -1.0 if axis == "Q" else 1.0
    x, y = xi.x, zeta.x
    rx, ry = math.sqrt(x), math.sqrt(y)
    A = (1.0 + x + sgn * 2.0 * rx * math.cos(xi.theta)) / (2.0 * (1.0 - x))
    B = (1.0 + y + sgn * 2.0 * ry * math.cos(zeta.theta)) / (2.0 * (1.0 - y))
    z = xi.alpha * zeta.alpha.conjugate()
    pref = (1.0 - x) ** 0.25 * (1.0 - y) ** 0.25
    cross_num = 1.0 + z + sgn * (
        rx * cmath.exp(1j * xi.theta) + ry * cmath.exp(-1j * zeta.theta)
    )
    C = pref * cross_num / (2.0 * (1.0 - z) ** 1.5)
    return SpanMatrices(A=A, B=B, C=C, S=overlap(xi, zeta))


def span_char_poly(mats: SpanMatrices, lam: float) -> float:
    """det(M - lam G) = gamma lam^2 - alpha lam + beta; root-residual witness."""
    gamma = 1.0 - abs(mats.S) ** 2
    alpha = (mats.A + mats.B) - 2.0 * (mats.S.conjugate() * mats.C).real
    beta = mats.A * mats.B - abs(mats.C) ** 2
    return gamma * lam * lam - alpha * lam + beta


def _clamped_discriminant(alpha: float, gamma: float, beta: float) -> float:
    disc = alpha * alpha - 4.0 * gamma * beta
    if disc < 0.0:
        if disc < _DISC_CLAMP:
            raise ArithmeticError(
                f"pencil discriminant {disc:.3e} below clamp window {_DISC_CLAMP:g}"
            )
        disc = 0.0
    return disc


def _minimizer_ratio(mats: SpanMatrices, lam: float) -> complex:
    den1 = mats.C.conjugate() - lam * mats.S.conjugate()
    if abs(den1) >= _RATIO_DEN_TOL:
        return -(mats.A - lam) / den1
    den2 = mats.B - lam
    if abs(den2) > abs(den1):
        return -(mats.C - lam * mats.S) / den2
    if den1 == 0:
        return 0j  # M = lam G on the span: every direction attains lam
    return -(mats.A - lam) / den1


def _gram_normalized(S: complex, ratio: complex) -> tuple[complex, complex]:
    den = 1.0 + abs(ratio) ** 2 + 2.0 * (ratio.conjugate() * S).real
    if den <= 0.0:
        raise DegenerateSpanError(
            f"minimizer ratio {ratio} is a null direction of the Gram form"
        )
    chi = 1.0 / math.sqrt(den)
    return complex(chi), ratio * chi


def span_minimum(
    xi: SqueezeParams,
    zeta: SqueezeParams,
    axis: str = "Q",
    eps_span: float = EPS_SPAN,
) -> SpanOptimum:
    """Minimize the fixed-axis variance over normalized span states."""
    mats = span_matrices(xi, zeta, axis)
    s_abs = abs(mats.S)
    if s_abs >= 1.0 - eps_span:
        raise DegenerateSpanError(
            f"|<zeta|xi>| = {s_abs:.12g} within eps_span={eps_span:g} of a collapsed span"
        )
    if s_abs > _CHOL_THRESHOLD:
        return _span_minimum_orthonormalized(mats)
    gamma = 1.0 - s_abs * s_abs
    alpha = (mats.A + mats.B) - 2.0 * (mats.S.conjugate() * mats.C).real
    beta = mats.A * mats.B - abs(mats.C) ** 2
    disc = _clamped_discriminant(alpha, gamma, beta)
    root = math.sqrt(disc)
    lam_m = 2.0 * beta / (alpha + root)
    lam_p = (alpha + root) / (2.0 * gamma)
    ratio = _minimizer_ratio(mats, lam_m)
    coeff = _gram_normalized(mats.S, ratio)
    return SpanOptimum(
        lambda_minus=lam_m,
        lambda_plus=lam_p,
        ratio=ratio,
        coefficients=coeff,
        discriminant=disc,
    )


def _span_minimum_orthonormalized(mats: SpanMatrices) -> SpanOptimum:
    """Cholesky-orthonormalized eigenpath for |S| close to 1."""
    gamma = 1.0 - abs(mats.S) ** 2
    rt = math.sqrt(gamma)
    # G = L L^dag with L = [[1, 0], [S, sqrt(gamma)]]
    Linv = np.array([[1.0, 0.0], [-mats.S / rt, 1.0 / rt]], dtype=complex)
    M = np.array([[mats.A, np.conj(mats.C)], [mats.C, mats.B]], dtype=complex)
    K = Linv @ M @ Linv.conj().T
    w, V = np.linalg.eigh(K)
    c = Linv.conj().T @ V[:, 0]  # Gram-normalized: c^dag G c = 1 already
    chi, eta = complex(c[0]), complex(c[1])
    if abs(chi) > 0.0:
        phase = chi / abs(chi)
        chi, eta = complex(abs(chi)), eta * phase.conjugate()
        ratio = eta / chi
    else:
        eta = complex(abs(eta))
        ratio = complex(math.inf, 0.0)
    alpha = (mats.A + mats.B) - 2.0 * (mats.S.conjugate() * mats.C).real
    beta = mats.A * mats.B - abs(mats.C) ** 2
    return SpanOptimum(
        lambda_minus=float(w[0]),
        lambda_plus=float(w[1]),
        ratio=ratio,
        coefficients=(chi, eta),
        discriminant=alpha * alpha - 4.0 * gamma * beta,
    )


def equal_strength_coeffs(r: float, theta: float, phi: float) -> EqualStrengthCoeffs:
    """Quadratic coefficients for r = s on the Q axis.

    Everything collapses onto den = |1 - x e^{i Delta}|:

        alpha_c = (A + B) - (1-x)^2 [ (1+x) - sqrt(x)(cos theta + cos phi) ] / den^3,
        beta_c  = A B - (1-x) |N_Q|^2 / (4 den^3),
        gamma_c = 1 - (1-x)/den,

    with N_Q = 1 + x e^{i Delta} - sqrt(x) (e^{i theta} + e^{-i phi}).
    |N_Q|^2 is evaluated from the complex N_Q: the expanded trigonometric
    polynomial is mathematically identical but cancels two orders harder
    as Delta -> 0, which is exactly where the cross-route agreement gets
    checked.
    """
    x = math.tanh(r) ** 2
    rx = math.sqrt(x)
    Delta = theta - phi
    eid = cmath.exp(1j * Delta)
    den = abs(1.0 - x * eid)
    A = (1.0 + x - 2.0 * rx * math.cos(theta)) / (2.0 * (1.0 - x))
    B = (1.0 + x - 2.0 * rx * math.cos(phi)) / (2.0 * (1.0 - x))
    NQ = 1.0 + x * eid - rx * (cmath.exp(1j * theta) + cmath.exp(-1j * phi))
    NQ_abs2 = abs(NQ) ** 2
    alpha_c = (A + B) - (1.0 - x) ** 2 / den**3 * (
        (1.0 + x) - rx * (math.cos(theta) + math.cos(phi))
    )
    beta_c = A * B - (1.0 - x) * NQ_abs2 / (4.0 * den**3)
    gamma_c = 1.0 - (1.0 - x) / den
    return EqualStrengthCoeffs(alpha_c=alpha_c, beta_c=beta_c, gamma_c=gamma_c, NQ_abs2=NQ_abs2)


def equal_strength_minimum(
    r: float, theta: float, phi: float, eps_delta: float = EPS_DELTA
) -> float:
    """Closed-form Q-axis span minimum for equal squeeze strengths."""
    Delta = math.remainder(theta - phi, 2.0 * math.pi)
    if abs(Delta) < eps_delta:
        raise DegenerateSpanError(
            f"Delta = {Delta:.3e} (mod 2pi) inside eps_delta={eps_delta:g}: span collapsed"
        )
    co = equal_strength_coeffs(r, theta, phi)
    disc = _clamped_discriminant(co.alpha_c, co.gamma_c, co.beta_c)
    return 2.0 * co.beta_c / (co.alpha_c + math.sqrt(disc))


def aligned_optimum(r: float, s: float) -> SpanOptimum:
    """Span minimum for two in-phase constituents (theta = phi = 0, r != s).

    Here S = 1/sqrt(cosh(r-s)) is real and A_Q = e^{-2r}/2.  The pure
    constituents sit inside the span, so lam_- <= e^{-2 max(r,s)}/2 always;
    for r != s the inequality is strict and the minimizing ratio is
    negative (the constituents interfere destructively along Q).
    """
    if abs(r - s) < 1e-12:
        raise DegenerateSpanError(f"aligned family needs r != s, got r = s = {r}")
    return span_minimum(SqueezeParams(r, 0.0), SqueezeParams(s, 0.0), axis="Q")
