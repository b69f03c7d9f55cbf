"""Truncated Fock-space oracle for the closed-form modules.

A squeezed vacuum expands over even Fock states with amplitudes

    c_{2n} = (1-x)^{1/4} (-alpha)^n (2n-1)!! / sqrt((2n)!).

The
amplitude magnitudes are assembled in log space (lgamma), so cutoffs of
a few thousand neither overflow the double factorial nor lose the tiny
tail amplitudes to premature underflow.  |c_{2n}|^2 decays geometrically
with ratio x, giving the rigorous tail bound

    sum_{m > n} |c_{2m}|^2 <= |c_{2(n+1)}|^2 / (1 - x)

used for automatic cutoff selection: start at 64, double until the
bound clears the tolerance, give up at the hard cap (overridable via
the JANUS_MAX_CUTOFF environment variable, read per call).

Everything here is deliberately independent of the closed-form modules:
moments come from ladder-operator algebra on the coefficient vector and
displacement from the sparse exponential of alpha0 a^dag - conj(alpha0) a,
so agreement between the two routes is a real cross-check, not a
tautology.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from scipy.sparse import diags
from scipy.sparse.linalg import expm_multiply
from scipy.special import gammaln

from .moments import MomentSet
from .states import JanusState, SqueezeParams

TAIL_TOL = 1e-12
HARD_CAP = 4000
_START_CUTOFF = 64
_NORM_TOL = 1e-10


class CutoffInsufficientError(RuntimeError):
    """The requested tail bound is unreachable within the cutoff cap."""


@dataclass(frozen=True)
class FockVector:
    """Coefficients over |0>..|cutoff> with a rigorous truncation bound."""

    amplitudes: np.ndarray
    cutoff: int
    tail_bound: float


def _hard_cap() -> int:
    cap = int(os.environ.get("JANUS_MAX_CUTOFF", HARD_CAP))
    if cap < 2:
        raise ValueError(f"JANUS_MAX_CUTOFF must be at least 2, got {cap}")
    return cap - (cap % 2)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _squeezed_amplitudes(p: SqueezeParams, cutoff: int) -> tuple[np.ndarray, float]:
    """Amplitudes up to |cutoff> plus the geometric tail bound beyond."""
    c = np.zeros(cutoff + 1, dtype=complex)
    if p.r == 0.0:
        c[0] = 1.0
        return c, 0.0
    nmax = cutoff // 2
    n = np.arange(nmax + 2)  # one extra entry feeds the tail bound
    # log |c_2n| = (1/4) log(1-x) + n log(tanh r) + log[(2n-1)!!/sqrt((2n)!)]
    logmag = (
        0.25 * math.log1p(-p.x)
        + n * math.log(math.tanh(p.r))
        + 0.5 * gammaln(2 * n + 1)
        - n * math.log(2.0)
        - gammaln(n + 1)
    )
    phase = n * (p.theta + math.pi)  # (-alpha)^n
    c[::2] = np.exp(logmag[:-1] + 1j * phase[:-1])
    tail = math.exp(2.0 * logmag[-1]) / (1.0 - p.x)
    return c, tail


def fock_squeezed(
    p: SqueezeParams, cutoff: int | None = None, tail_tol: float = TAIL_TOL
) -> FockVector:
    """Truncated squeezed vacuum; adaptive cutoff unless one is forced."""
    if cutoff is not None:
        if cutoff < 0 or cutoff % 2:
            raise ValueError(f"cutoff must be even and nonnegative, got {cutoff}")
        c, tail = _squeezed_amplitudes(p, cutoff)
        if tail >= tail_tol:
            raise CutoffInsufficientError(
                f"tail bound {tail:.3e} >= {tail_tol:g} at forced cutoff {cutoff}"
            )
        return FockVector(_freeze(c), cutoff, tail)
    cap = _hard_cap()
    N = min(_START_CUTOFF, cap)
    while True:
        c, tail = _squeezed_amplitudes(p, N)
        if tail < tail_tol:
            return FockVector(_freeze(c), N, tail)
        if N >= cap:
            raise CutoffInsufficientError(
                f"tail bound {tail:.3e} >= {tail_tol:g} at hard cap {cap} (r={p.r:g})"
            )
        N = min(2 * N, cap)


def fock_janus(
    state: JanusState, cutoff: int | None = None, tail_tol: float = TAIL_TOL
) -> FockVector:
    """Truncated Janus state on the common cutoff of its constituents."""
    if cutoff is None:
        va = fock_squeezed(state.xi, None, tail_tol)
        vb = fock_squeezed(state.zeta, None, tail_tol)
        N = max(va.cutoff, vb.cutoff)
        if va.cutoff != N:
            va = fock_squeezed(state.xi, N, tail_tol)
        if vb.cutoff != N:
            vb = fock_squeezed(state.zeta, N, tail_tol)
    else:
        va = fock_squeezed(state.xi, cutoff, tail_tol)
        vb = fock_squeezed(state.zeta, cutoff, tail_tol)
        N = cutoff
    c = state.chi * va.amplitudes + state.eta * vb.amplitudes
    # Triangle inequality on the truncated pieces.
    tail = (
        abs(state.chi) * math.sqrt(va.tail_bound)
        + abs(state.eta) * math.sqrt(vb.tail_bound)
    ) ** 2
    norm = float(np.linalg.norm(c))
    if abs(norm - 1.0) > _NORM_TOL:
        raise ArithmeticError(
            f"truncated Janus norm deviates by {norm - 1.0:.3e} (cutoff {N})"
        )
    return FockVector(_freeze(c), N, tail)


def ladder_apply(c: np.ndarray, p: int = 0, q: int = 0) -> np.ndarray:
    """Coefficients of a^dag^p a^q |c>, truncated to the input cutoff."""
    if p < 0 or q < 0:
        raise ValueError(f"ladder powers must be nonnegative, got ({p}, {q})")
    N = len(c) - 1
    src = np.arange(q, N + 1)
    dst = src - q + p
    keep = dst <= N
    src, dst = src[keep], dst[keep]
    # sqrt[ n! / (n-q)! ] * sqrt[ (n-q+p)! / (n-q)! ] in log space
    logf = 0.5 * (gammaln(src + 1) + gammaln(dst + 1)) - gammaln(src - q + 1)
    out = np.zeros_like(c)
    out[dst] = c[src] * np.exp(logf)
    return out


def _padded_pair(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = max(len(a), len(b))
    if len(a) < n:
        a = np.concatenate([a, np.zeros(n - len(a), dtype=a.dtype)])
    if len(b) < n:
        b = np.concatenate([b, np.zeros(n - len(b), dtype=b.dtype)])
    return a, b


def oracle_sandwich(bra: FockVector, ket: FockVector, p: int = 0, q: int = 0) -> complex:
    """<bra| a^dag^p a^q |ket> by direct ladder algebra."""
    a, b = _padded_pair(bra.amplitudes, ket.amplitudes)
    return complex(np.vdot(a, ladder_apply(b, p, q)))


def oracle_moments(v: FockVector) -> MomentSet:
    """MomentSet of a truncated vector, entirely from ladder sums."""
    c = v.amplitudes
    n = np.arange(len(c), dtype=float)
    w = np.abs(c) ** 2
    N1 = float(np.sum(n * w))
    N2 = float(np.sum(n * (n - 1.0) * w))
    mean_a = complex(np.vdot(c, ladder_apply(c, 0, 1)))
    M2 = complex(np.vdot(c, ladder_apply(c, 0, 2)))
    M4 = complex(np.vdot(c, ladder_apply(c, 0, 4)))
    return MomentSet(
        N1=N1,
        N2=N2,
        M2=M2,
        M4=M4,
        nbar=N1 - abs(mean_a) ** 2,
        m=M2 - mean_a * mean_a,
        mean_a=mean_a,
    )


def oracle_generator_variance(v: FockVector, apply_G) -> float:
    """Var(G) = <Gv|Gv> - <v|Gv>^2 for a Hermitian G given as a callable."""
    c = v.amplitudes
    Gc = apply_G(c)
    mean = np.vdot(c, Gc).real
    return float(np.vdot(Gc, Gc).real - mean * mean)


def oracle_displace(v: FockVector, alpha0: complex, tail_tol: float = TAIL_TOL) -> FockVector:
    """exp(alpha0 a^dag - conj(alpha0) a) |v> via sparse expm action.

    The cutoff grows until the top population band and the norm drift
    both clear the tolerance, so the result is trustworthy to the same
    standard as the analytically truncated vectors.
    """
    a0 = complex(alpha0)
    if a0 == 0:
        return v
    cap = _hard_cap()
    N = max(v.cutoff, _START_CUTOFF // 2)
    while True:
        N = min(2 * N, cap)
        c = np.zeros(N + 1, dtype=complex)
        c[: v.cutoff + 1] = v.amplitudes
        sq = np.sqrt(np.arange(1.0, N + 1.0))
        K = diags([a0 * sq, -np.conj(a0) * sq], offsets=[-1, 1], format="csr")
        w = expm_multiply(K, c)
        band = int(max(2, N // 16))
        band_pop = float(np.sum(np.abs(w[-band:]) ** 2))
        norm_drift = abs(float(np.linalg.norm(w)) - 1.0)
        if band_pop < tail_tol and norm_drift < 1e-11:
            return FockVector(_freeze(w), N, max(band_pop, v.tail_bound))
        if N >= cap:
            raise CutoffInsufficientError(
                f"displacement cutoff capped at {cap}: band population "
                f"{band_pop:.3e}, norm drift {norm_drift:.3e}"
            )
