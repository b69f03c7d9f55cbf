"""Closed-form photon-number and anomalous moments of Janus states.

Everything reduces to one template.  Writing w = chi conj(eta) and
pref = (1-x)^{1/4} (1-y)^{1/4}, the factorial moments N_k = <a^dag^k a^k>
for k in {1, 2} are

    N_k = |chi|^2 P_k(x)/(1-x)^k + |eta|^2 P_k(y)/(1-y)^k
          + 2 Re[ w pref P_k(z)/(1-z)^{k+1/2} ],

with the squeezing polynomials P_1(u) = u, P_2(u) = 2u^2 + u shared
verbatim between the diagonal and cross contributions (same kernel,
argument x, y or z).  The anomalous moments carry one constituent
amplitude each:

    M_2 = -[ |chi|^2 a/(1-x) + |eta|^2 b/(1-y)
             + w pref a/(1-z)^{3/2} + conj(w) pref b/(1-conj(z))^{3/2} ],
    M_4 = 3 [ |chi|^2 a^2/(1-x)^2 + |eta|^2 b^2/(1-y)^2
              + w pref a^2/(1-z)^{5/2} + conj(w) pref b^2/(1-conj(z))^{5/2} ],

with a = alpha, b = beta.  The cross matrix elements come from the
closed generating series

    G_{2k}(z) = sum_m z^m (2m+2k-1)!!/(2m)!! = (2k-1)!!/(1-z)^{k+1/2},

which is also exposed directly (with a partial-sum companion used as a
numerical witness).  Moments are recomputed on demand; no caching.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .states import JanusState, SqueezeParams

# Below this mean photon number the g2 denominator is numerically void.
G2_FLOOR = 1e-12

# Ascending-power coefficients of the shared kernels P_k.
SQUEEZE_POLYNOMIALS: dict[int, tuple[float, ...]] = {
    1: (0.0, 1.0),
    2: (0.0, 1.0, 2.0),
}

SqueezePolynomial = tuple[float, ...]


class G2UndefinedError(ArithmeticError):
    """g2 requested for a state with N1 at or below the vacuum floor."""


@dataclass(frozen=True)
class MomentSet:
    """Second- and fourth-order moment data of one state.

    N1, N2 are the factorial moments <a^dag a> and <a^dag^2 a^2>; M2, M4
    the anomalous <a^2> and <a^4>.  nbar and m are the central versions
    nbar = N1 - |<a>|^2, m = M2 - <a>^2, which coincide with N1, M2 for
    the undisplaced (even-parity) states but keep displaced moment sets
    honest.
    """

    N1: float
    N2: float
    M2: complex
    M4: complex
    nbar: float
    m: complex
    mean_a: complex = 0j


def squeeze_polynomial(k: int, u: complex) -> complex:
    """P_k(u) for the tabulated orders (P_1 = u, P_2 = 2u^2 + u)."""
    try:
        coeffs = SQUEEZE_POLYNOMIALS[k]
    except KeyError:
        raise ValueError(f"squeezing kernels are tabulated only for k in 1..2, got {k}") from None
    acc: complex = 0.0
    for c in reversed(coeffs):
        acc = acc * u + c
    return acc


def _log_odd_double_factorial(k: int) -> float:
    """log (2k-1)!!, via (2k-1)!! = (2k)! / (2^k k!)."""
    if k <= 0:
        return 0.0
    return math.lgamma(2 * k + 1) - k * math.log(2.0) - math.lgamma(k + 1)


def odd_double_factorial(k: int) -> float:
    """(2k-1)!! with (-1)!! = 1; exact integers for small k, log space beyond."""
    if k <= 0:
        return 1.0
    if k <= 64:
        return float(math.prod(range(1, 2 * k, 2)))
    return math.exp(_log_odd_double_factorial(k))


def generating_series(z: complex, k: int) -> complex:
    """Closed form (2k-1)!! / (1-z)^{k+1/2} of G_{2k}; requires |z| < 1."""
    if k < 0:
        raise ValueError(f"series order must be nonnegative, got {k}")
    if abs(z) >= 1.0:
        raise ValueError(f"series domain requires |z| < 1, got |z| = {abs(z):.6g}")
    return odd_double_factorial(k) * (1.0 - z) ** (-(k + 0.5))


def generating_series_partial(z: complex, k: int, terms: int = 200) -> complex:
    """Direct partial sum of G_{2k}; numerical witness for the closed form.

    Successive terms obey t_{m+1} = t_m z (2m+2k+1)/(2m+2), so the sum
    is accumulated without any factorial evaluation.
    """
    if k < 0:
        raise ValueError(f"series order must be nonnegative, got {k}")
    if abs(z) >= 1.0:
        raise ValueError(f"series domain requires |z| < 1, got |z| = {abs(z):.6g}")
    term: complex = odd_double_factorial(k)
    acc = term
    for m in range(terms - 1):
        term *= z * (2 * m + 2 * k + 1) / (2 * m + 2)
        acc += term
    return acc


def cross_even_moment(xi: SqueezeParams, zeta: SqueezeParams, k: int) -> complex:
    """<zeta| a^{2k} |xi> in closed form.

    Equals pref (2k-1)!! (-alpha)^k / (1-z)^{k+1/2}; the swapped element
    <xi| a^{2k} |zeta> follows by exchanging the arguments, which maps
    alpha -> beta and z -> conj(z).  Assembled in log space so large k
    neither overflows the double factorial nor underflows alpha^k
    prematurely.
    """
    if k < 0:
        raise ValueError(f"moment order must be nonnegative, got {k}")
    z = xi.alpha * zeta.alpha.conjugate()
    pref = (1.0 - xi.x) ** 0.25 * (1.0 - zeta.x) ** 0.25
    if k == 0:
        return pref * (1.0 - z) ** -0.5
    if xi.r == 0.0:
        return 0j  # a^{2k} annihilates the vacuum constituent
    log_val = (
        math.log(pref)
        + _log_odd_double_factorial(k)
        + k * cmath.log(-xi.alpha)
        - (k + 0.5) * cmath.log(1.0 - z)
    )
    return cmath.exp(log_val)


def moment_set(state: JanusState) -> MomentSet:
    """All tracked moments of a Janus state from the closed forms above."""
    xi, zeta = state.xi, state.zeta
    x, y = xi.x, zeta.x
    a, b = xi.alpha, zeta.alpha
    z = a * b.conjugate()
    pref = (1.0 - x) ** 0.25 * (1.0 - y) ** 0.25
    wx = abs(state.chi) ** 2
    wy = abs(state.eta) ** 2
    w = state.chi * state.eta.conjugate() * pref  # weights <zeta| . |xi>
    wc = w.conjugate()  # ... and the swapped elements

    one_m_z = 1.0 - z
    one_m_zc = one_m_z.conjugate()

    N1 = (
        wx * x / (1.0 - x)
        + wy * y / (1.0 - y)
        + 2.0 * (w * z / one_m_z**1.5).real
    )
    N2 = (
        wx * squeeze_polynomial(2, x).real / (1.0 - x) ** 2
        + wy * squeeze_polynomial(2, y).real / (1.0 - y) ** 2
        + 2.0 * (w * squeeze_polynomial(2, z) / one_m_z**2.5).real
    )
    M2 = -(
        wx * a / (1.0 - x)
        + wy * b / (1.0 - y)
        + w * a / one_m_z**1.5
        + wc * b / one_m_zc**1.5
    )
    M4 = 3.0 * (
        wx * a**2 / (1.0 - x) ** 2
        + wy * b**2 / (1.0 - y) ** 2
        + w * a**2 / one_m_z**2.5
        + wc * b**2 / one_m_zc**2.5
    )
    # The exact N_k are nonnegative; rounding may leave -1e-17 near vacuum.
    if -1e-13 < N1 < 0.0:
        N1 = 0.0
    if -1e-13 < N2 < 0.0:
        N2 = 0.0
    return MomentSet(N1=N1, N2=N2, M2=M2, M4=M4, nbar=N1, m=M2, mean_a=0j)


def diagonal_moments(p: SqueezeParams) -> MomentSet:
    """Moments of a single squeezed vacuum: N2 = nbar (3 nbar + 1), etc."""
    x, a = p.x, p.alpha
    N1 = x / (1.0 - x)
    N2 = x * (2.0 * x + 1.0) / (1.0 - x) ** 2
    M2 = -a / (1.0 - x)
    M4 = 3.0 * a**2 / (1.0 - x) ** 2
    return MomentSet(N1=N1, N2=N2, M2=M2, M4=M4, nbar=N1, m=M2, mean_a=0j)


def g2(mset: MomentSet) -> float:
    """Normalized second factorial moment N2 / N1^2.

    Raises rather than returning inf/nan at (near-)vacuum: a diverging
    g2 from a genuinely two-photon-suppressed state and a 0/0 from the
    vacuum must stay distinguishable downstream.
    """
    if mset.N1 <= G2_FLOOR:
        raise G2UndefinedError(
            f"g2 undefined: N1 = {mset.N1:.3e} at or below floor {G2_FLOOR:g}"
        )
    return mset.N2 / (mset.N1 * mset.N1)
