"""Randomized cross-verification of every closed form against the oracle.

One pass over a seeded sample of random Janus states checks

  * the closed overlap against the Fock inner product,
  * all tracked moments against ladder sums (and the cross matrix
    elements <zeta| a^{2k} |xi> for k <= 4),
  * the span pencil entries and the span minimum against a direct
    Rayleigh quotient on the oracle vectors,
  * phase and quadratic QFI against 4 Var(G) with G applied in Fock
    space,
  * displacement moment shifts against the sparse-exponential route,

plus closed-form-only invariants (no-go bound, |m| <= sqrt(nbar(nbar+1)),
uncertainty determinant, rotated-variance extrema, the quadratic-QFI
axis sum rule and envelope, and the generating-series partial sums).

Agreement uses the mixed tolerance |a - b| <= max(rtol max(|a|,|b|), atol)
with rtol = 1e-8, atol = 1e-10.  Each named check reports its sample
count, failures, and worst normalized residual.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .fock import (
    fock_janus,
    fock_squeezed,
    ladder_apply,
    oracle_displace,
    oracle_moments,
    oracle_sandwich,
)
from .moments import (
    cross_even_moment,
    generating_series,
    generating_series_partial,
    moment_set,
)
from .qfi import (
    no_go_bound,
    phase_qfi,
    quadratic_qfi,
    quadratic_qfi_envelope,
    vartheta_star,
)
from .quadrature import covariance, displace, rotated_variance
from .span import span_matrices, span_minimum
from .states import (
    DegenerateSpanError,
    InadmissibleCoefficientsError,
    JanusState,
    SqueezeParams,
    from_ratio,
    overlap,
    solve_coefficients,
)

RTOL = 1e-8
ATOL = 1e-10


@dataclass
class CheckResult:
    name: str
    samples: int = 0
    failures: int = 0
    worst: float = 0.0

    def record(self, a, b) -> None:
        a, b = complex(a), complex(b)
        err = abs(a - b)
        scale = max(abs(a), abs(b))
        self.samples += 1
        self.worst = max(self.worst, err / max(scale, 1.0))
        if err > max(RTOL * scale, ATOL):
            self.failures += 1

    def record_bound(self, margin: float, slack: float = 1e-9) -> None:
        """margin >= -slack counts as pass; worst tracks the most negative margin."""
        self.samples += 1
        self.worst = max(self.worst, -min(margin, 0.0))
        if margin < -slack:
            self.failures += 1

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.samples > 0


@dataclass
class VerificationSummary:
    checks: list[CheckResult]
    samples: int
    r_cap: float
    seed: int
    max_cutoff: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def sample_states(rng: np.random.Generator, n: int, r_cap: float) -> list[JanusState]:
    out: list[JanusState] = []
    while len(out) < n:
        r = rng.uniform(0.0, r_cap)
        s = rng.uniform(0.0, r_cap)
        theta = rng.uniform(0.0, 2.0 * np.pi)
        phi = rng.uniform(0.0, 2.0 * np.pi)
        try:
            if rng.uniform() < 0.5:
                st = from_ratio(
                    SqueezeParams(r, theta), SqueezeParams(s, phi), rng.uniform(-3.0, 3.0)
                )
            else:
                st = solve_coefficients(
                    SqueezeParams(r, theta),
                    SqueezeParams(s, phi),
                    rng.uniform(0.0, 1.2),
                    rng.uniform(0.0, 2.0 * np.pi),
                )
        except (DegenerateSpanError, InadmissibleCoefficientsError):
            continue
        out.append(st)
    return out


def _quadrature_sq(c: np.ndarray, vartheta: float) -> np.ndarray:
    """Apply X_vartheta^2 with X = (a e^{-i vartheta} + a^dag e^{i vartheta})/sqrt(2)."""
    e2 = cmath.exp(2j * vartheta)
    return 0.5 * (
        ladder_apply(c, 0, 2) / e2
        + ladder_apply(c, 2, 0) * e2
        + 2.0 * ladder_apply(c, 1, 1)
        + c
    )


def _stretch_generator(c: np.ndarray, axis: float) -> np.ndarray:
    """Apply the squeeze generator (a^2 e^{-2i axis} - a^dag^2 e^{2i axis}) / 2i."""
    e2 = cmath.exp(2j * axis)
    return (ladder_apply(c, 0, 2) / e2 - ladder_apply(c, 2, 0) * e2) / 2j


def _gen_variance(c: np.ndarray, apply_G) -> float:
    Gc = apply_G(c)
    mean = float(np.vdot(c, Gc).real)
    return float(np.vdot(Gc, Gc).real) - mean * mean


def run_verification(
    samples: int = 200, r_cap: float = 1.5, seed: int = 12345
) -> VerificationSummary:
    rng = np.random.default_rng(seed)
    states = sample_states(rng, samples, r_cap)
    max_cutoff = 0

    checks = {
        name: CheckResult(name)
        for name in (
            "overlap",
            "moment_N1",
            "moment_N2",
            "moment_M2",
            "moment_M4",
            "mean_a_zero",
            "cross_even_k<=4",
            "span_entry_A",
            "span_entry_B",
            "span_entry_C",
            "span_minimum",
            "span_minimizer_variance",
            "qfi_phase",
            "qfi_quadratic",
            "displacement_shift",
            "no_go_bound",
            "m_magnitude_bound",
            "uncertainty_det",
            "rotated_extrema",
            "qfi_axis_sum_rule",
            "qfi_envelope",
            "series_partial_sum",
        )
    }

    for st in states:
        v = fock_janus(st)
        max_cutoff = max(max_cutoff, v.cutoff)
        c = v.amplitudes
        omset = oracle_moments(v)
        mset = moment_set(st)

        checks["overlap"].record(
            overlap(st.xi, st.zeta),
            complex(
                np.vdot(
                    fock_squeezed(st.zeta, v.cutoff).amplitudes,
                    fock_squeezed(st.xi, v.cutoff).amplitudes,
                )
            ),
        )
        checks["moment_N1"].record(mset.N1, omset.N1)
        checks["moment_N2"].record(mset.N2, omset.N2)
        checks["moment_M2"].record(mset.M2, omset.M2)
        checks["moment_M4"].record(mset.M4, omset.M4)
        checks["mean_a_zero"].record(omset.mean_a, 0.0)

        # QFI both ways.
        checks["qfi_phase"].record(
            phase_qfi(mset),
            4.0 * _gen_variance(c, lambda u: ladder_apply(u, 1, 1)),
        )
        # The quadratic QFI at angle vt is 4 Var of the stretch generator
        # along the physical axis (2 vt - pi)/4 (angle reparametrization).
        for vt in (0.0, 0.37, 0.5 * math.pi):
            axis = 0.25 * (2.0 * vt - math.pi)
            checks["qfi_quadratic"].record(
                quadratic_qfi(mset, vt),
                4.0 * _gen_variance(c, lambda u: _stretch_generator(u, axis)),
            )

        # Displacement shifts, closed vs sparse exponential.
        a0 = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8))
        shifted = displace(mset, a0)
        dvec = oracle_displace(v, a0)
        max_cutoff = max(max_cutoff, dvec.cutoff)
        oshift = oracle_moments(dvec)
        checks["displacement_shift"].record(shifted.N1, oshift.N1)
        checks["displacement_shift"].record(shifted.N2, oshift.N2)
        checks["displacement_shift"].record(shifted.M2, oshift.M2)
        checks["displacement_shift"].record(shifted.M4, oshift.M4)
        checks["displacement_shift"].record(shifted.mean_a, oshift.mean_a)

        # Closed-form invariants.
        cov = covariance(mset)
        checks["no_go_bound"].record_bound(cov.Vmin - no_go_bound(mset.nbar))
        checks["m_magnitude_bound"].record_bound(
            math.sqrt(mset.nbar * (mset.nbar + 1.0)) - abs(mset.m)
        )
        checks["uncertainty_det"].record_bound(
            cov.VQQ * cov.VPP - cov.VQP**2 - 0.25, slack=1e-9 * max(1.0, cov.VQQ * cov.VPP)
        )
        checks["rotated_extrema"].record(rotated_variance(mset, cov.phi_star), cov.Vmin)
        checks["rotated_extrema"].record(
            rotated_variance(mset, cov.phi_star + 0.5 * math.pi), cov.Vmax
        )
        vt_any = rng.uniform(0.0, math.pi)
        checks["qfi_axis_sum_rule"].record(
            quadratic_qfi(mset, vt_any) + quadratic_qfi(mset, vt_any + 0.5 * math.pi),
            4.0 * (mset.N2 + 2.0 * mset.N1 + 1.0 - abs(mset.M2) ** 2),
        )
        env = quadratic_qfi_envelope(mset)
        checks["qfi_envelope"].record(quadratic_qfi(mset, vartheta_star(mset)), env)
        checks["qfi_envelope"].record_bound(env - quadratic_qfi(mset, vt_any))

    # Cross matrix elements and span checks use the constituent pairs.
    for st in states:
        mats = span_matrices(st.xi, st.zeta, axis="Q")
        # The a^{2k} ladder factors grow like n^k, amplifying the truncated
        # tail; k = 4 therefore needs a much tighter tail than the default.
        tt = 1e-18
        n = max(fock_squeezed(st.xi, None, tt).cutoff, fock_squeezed(st.zeta, None, tt).cutoff)
        max_cutoff = max(max_cutoff, n)
        va = fock_squeezed(st.xi, n, tt)
        vb = fock_squeezed(st.zeta, n, tt)

        for k in range(5):
            checks["cross_even_k<=4"].record(
                cross_even_moment(st.xi, st.zeta, k), oracle_sandwich(vb, va, 0, 2 * k)
            )

        def q2(u: np.ndarray) -> np.ndarray:
            return _quadrature_sq(u, 0.0)

        ca, cb = va.amplitudes, vb.amplitudes
        checks["span_entry_A"].record(mats.A, float(np.vdot(ca, q2(ca)).real))
        checks["span_entry_B"].record(mats.B, float(np.vdot(cb, q2(cb)).real))
        checks["span_entry_C"].record(mats.C, complex(np.vdot(cb, q2(ca))))

        if abs(mats.S) < 1.0 - 1e-6:
            opt = span_minimum(st.xi, st.zeta, axis="Q")
            # Rayleigh quotient of the reported minimizer, fully in Fock space.
            w = opt.coefficients[0] * ca + opt.coefficients[1] * cb
            num = float(np.vdot(w, q2(w)).real)
            den = float(np.vdot(w, w).real)
            checks["span_minimizer_variance"].record(opt.lambda_minus, num / den)
            # Scan a few random span directions: none may undercut lambda_-.
            for _ in range(8):
                tt = rng.uniform(-4.0, 4.0)
                wdir = ca + tt * cb
                val = float(np.vdot(wdir, q2(wdir)).real) / float(np.vdot(wdir, wdir).real)
                checks["span_minimum"].record_bound(val - opt.lambda_minus, slack=1e-8)

    # Series identities on random interior points.
    for _ in range(len(states)):
        zz = rng.uniform(0.0, 0.85) * cmath.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        k = int(rng.integers(0, 5))
        checks["series_partial_sum"].record(
            generating_series(zz, k), generating_series_partial(zz, k, terms=400)
        )

    return VerificationSummary(
        checks=list(checks.values()),
        samples=samples,
        r_cap=r_cap,
        seed=seed,
        max_cutoff=max_cutoff,
    )
