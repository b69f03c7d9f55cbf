"""Squeezed-vacuum constituents and their normalized two-component superpositions.

A single-mode squeezed vacuum |xi>, xi = r e^{i theta}, is described by
the pair (r, theta).  All closed forms downstream are written in the
bounded variables

    x = tanh^2 r,        alpha = e^{i theta} tanh r,

so every expression is a rational function of quantities of magnitude
strictly below one.  A Janus state is the normalized superposition

    |psi> = chi |xi> + eta |zeta>,       zeta = s e^{i phi},

whose coefficients live on the shell

    |chi|^2 + |eta|^2 + 2 Re[chi conj(eta) S] = 1,

set by the constituent overlap

    S = <zeta|xi> = (1-x)^{1/4} (1-y)^{1/4} / sqrt(1 - z),
    z = alpha conj(beta) = sqrt(x y) e^{i Delta},      Delta = theta - phi.

Since |z| < 1 strictly, 1 - z lies in the open right half-plane and the
principal square root is always well defined; no branch tracking is
needed anywhere.  Both constituents contain only even Fock components,
so <psi| a |psi> = 0 identically and the global phase can be fixed by
keeping chi real and nonnegative.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

NORMALIZATION_TOL = 1e-12

# Gram norms below this are treated as a collapsed (rank-one) span.
_SPAN_NORM_TOL = 1e-12


class InadmissibleCoefficientsError(ValueError):
    """No real nonnegative chi exists for the requested (|eta|, delta)."""


class DegenerateSpanError(ValueError):
    """The two constituents span a numerically one-dimensional subspace."""


@dataclass(frozen=True)
class SqueezeParams:
    """One squeezed vacuum, xi = r e^{i theta}."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        if not self.r >= 0.0:
            raise ValueError(f"squeeze magnitude must be nonnegative, got {self.r}")

    @property
    def x(self) -> float:
        return math.tanh(self.r) ** 2

    @property
    def alpha(self) -> complex:
        return math.tanh(self.r) * cmath.exp(1j * self.theta)

    @property
    def nbar(self) -> float:
        """Mean photon number sinh^2 r of the constituent alone."""
        return math.sinh(self.r) ** 2


@dataclass(frozen=True)
class OverlapData:
    """Overlap S = <zeta|xi> together with the variables it is built from."""

    z: complex
    Delta: float
    S: complex


def overlap(xi: SqueezeParams, zeta: SqueezeParams) -> complex:
    """<zeta|xi> in closed form (principal branch)."""
    z = xi.alpha * zeta.alpha.conjugate()
    return (1.0 - xi.x) ** 0.25 * (1.0 - zeta.x) ** 0.25 * (1.0 - z) ** -0.5


def overlap_data(xi: SqueezeParams, zeta: SqueezeParams) -> OverlapData:
    z = xi.alpha * zeta.alpha.conjugate()
    return OverlapData(z=z, Delta=xi.theta - zeta.theta, S=overlap(xi, zeta))


@dataclass(frozen=True)
class JanusState:
    """chi |xi> + eta |zeta>, validated against the normalization shell."""

    xi: SqueezeParams
    zeta: SqueezeParams
    chi: complex
    eta: complex

    def __post_init__(self):
        # Construction must not silently accept unnormalized coefficients:
        # every closed form downstream assumes <psi|psi> = 1 exactly.
        res = self.norm_residual()
        if abs(res) > NORMALIZATION_TOL:
            raise ValueError(
                f"coefficients violate normalization by {res:.3e} "
                f"(tolerance {NORMALIZATION_TOL:g})"
            )

    def norm_residual(self) -> float:
        """<psi|psi> - 1 evaluated from the closed-form overlap."""
        S = overlap(self.xi, self.zeta)
        n = (
            abs(self.chi) ** 2
            + abs(self.eta) ** 2
            + 2.0 * (self.chi * self.eta.conjugate() * S).real
        )
        return n - 1.0

    @property
    def ratio(self) -> complex:
        """eta / chi (inf if chi = 0)."""
        if self.chi == 0:
            return complex(math.inf, 0.0)
        return complex(self.eta) / complex(self.chi)


def solve_coefficients(
    xi: SqueezeParams, zeta: SqueezeParams, eta_mag: float, delta: float
) -> JanusState:
    """State with eta = |eta| e^{i delta} and chi real nonnegative.

    Normalization is quadratic in chi,

        chi^2 + 2 chi |eta| Re[e^{-i delta} S] + |eta|^2 - 1 = 0,

    and we expose only the branch

        chi = -b + sqrt(b^2 - |eta|^2 + 1),    b = |eta| Re[e^{-i delta} S],

    i.e. the root continuously connected to chi = +1 at eta = 0.  For
    |eta| <= 1 this root is automatically nonnegative; for |eta| > 1 it
    may still exist (strongly non-orthogonal constituents) but can turn
    negative, which is rejected as inadmissible along with disc < 0.
    """
    if eta_mag < 0.0:
        raise ValueError(f"eta magnitude must be nonnegative, got {eta_mag}")
    S = overlap(xi, zeta)
    b_half = eta_mag * (cmath.exp(-1j * delta) * S).real
    disc4 = b_half * b_half - (eta_mag * eta_mag - 1.0)
    if disc4 < 0.0:
        raise InadmissibleCoefficientsError(
            f"no real chi at |eta|={eta_mag:.6g}, delta={delta:.6g}: "
            f"discriminant {4.0 * disc4:.3e} < 0"
        )
    chi = -b_half + math.sqrt(disc4)
    if chi < 0.0:
        raise InadmissibleCoefficientsError(
            f"principal root chi={chi:.6g} < 0 at |eta|={eta_mag:.6g}, delta={delta:.6g}"
        )
    eta = eta_mag * cmath.exp(1j * delta)
    return JanusState(xi, zeta, complex(chi), eta)


def from_ratio(xi: SqueezeParams, zeta: SqueezeParams, t: float) -> JanusState:
    """State with real coefficient ratio eta/chi = t.

    chi = 1 / sqrt(1 + t^2 + 2 t Re S); only the real part of the
    overlap enters because both coefficients are real.  The Gram norm
    1 + t^2 + 2 t Re S >= 1 - |S|^2 > 0 unless the span collapses.
    """
    S = overlap(xi, zeta)
    den = 1.0 + t * t + 2.0 * t * S.real
    if den <= _SPAN_NORM_TOL:
        raise DegenerateSpanError(
            f"ratio t={t:.6g} hits a collapsed span direction (Gram norm {den:.3e})"
        )
    chi = 1.0 / math.sqrt(den)
    return JanusState(xi, zeta, complex(chi), complex(t * chi))


def normalized_state(
    xi: SqueezeParams, zeta: SqueezeParams, chi0: complex, eta0: complex
) -> JanusState:
    """Rescale arbitrary coefficients onto the shell, chi rotated real >= 0."""
    S = overlap(xi, zeta)
    chi0 = complex(chi0)
    eta0 = complex(eta0)
    n2 = abs(chi0) ** 2 + abs(eta0) ** 2 + 2.0 * (chi0 * eta0.conjugate() * S).real
    if n2 <= _SPAN_NORM_TOL:
        raise DegenerateSpanError(
            f"coefficients ({chi0}, {eta0}) have Gram norm {n2:.3e}"
        )
    scale = 1.0 / math.sqrt(n2)
    chi, eta = chi0 * scale, eta0 * scale
    if abs(chi) > 0.0:
        phase = chi / abs(chi)
        chi, eta = complex(abs(chi)), eta * phase.conjugate()
    elif abs(eta) > 0.0:
        eta = complex(abs(eta))
    return JanusState(xi, zeta, chi, eta)
