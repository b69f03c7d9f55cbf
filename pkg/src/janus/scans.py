"""Parameter scans with a stable tabular schema for downstream plotting.

Every scan kind shares one canonical per-state column block (coefficients,
covariance summary, g2, QFI values, benchmarks, advantage flags) preceded
by the scan coordinates and followed by kind-specific extras.  Cells are
either finite numbers, 0/1 flags, or one of the string sentinels

    INADMISSIBLE    no real nonnegative chi at this (|eta|, delta)
    SPAN_COLLAPSED  constituents numerically parallel (Delta = 0 mod 2pi)
    NOT_SQUEEZED    u > 1: matched-depth squeezed benchmark undefined
    G2_UNDEFINED    N1 at the vacuum floor

so a masked cell is always distinguishable from a small number.  Floats
are written with repr-faithful %.17g and rows in a fixed order, which
makes repeated runs byte-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, TextIO

import numpy as np

from .moments import G2UndefinedError, g2, moment_set
from .qfi import (
    auxiliary_family,
    aux_t_threshold,
    beats_benchmark,
    benchmarks,
    no_go_bound,
    phase_qfi_squeezed,
)
from .quadrature import covariance
from .span import span_matrices, span_minimum
from .states import (
    DegenerateSpanError,
    InadmissibleCoefficientsError,
    JanusState,
    SqueezeParams,
    from_ratio,
    solve_coefficients,
)

SENT_INADMISSIBLE = "INADMISSIBLE"
SENT_SPAN_COLLAPSED = "SPAN_COLLAPSED"
SENT_NOT_SQUEEZED = "NOT_SQUEEZED"
SENT_G2_UNDEFINED = "G2_UNDEFINED"

DEFAULT_SEED = 12345

STATE_COLUMNS = [
    "status",
    "chi_re",
    "chi_im",
    "eta_re",
    "eta_im",
    "nbar",
    "dq2",
    "dp2",
    "vqp",
    "dqdp",
    "vmin",
    "vmax",
    "phi_star",
    "u",
    "s_db",
    "g2",
    "f_phase",
    "f_quad_env",
    "f_phase_sq_at_nbar",
    "f_phase_sq_at_u",
    "f_quad_sq_at_u",
    "adv_phase_nbar",
    "adv_phase_u",
    "adv_quad_u",
]

Cell = float | int | bool | str


@dataclass(frozen=True)
class ScanResult:
    kind: str
    columns: list[str]
    rows: list[dict[str, Cell]]


def state_block(state: JanusState, status: str = "OK") -> dict[str, Cell]:
    """Canonical per-state cells shared by all scan kinds."""
    mset = moment_set(state)
    cov = covariance(mset)
    rep = benchmarks(mset)
    try:
        g2_cell: Cell = g2(mset)
    except G2UndefinedError:
        g2_cell = SENT_G2_UNDEFINED
    quad_bench: Cell = (
        SENT_NOT_SQUEEZED if rep.F_quad_sq_at_u is None else rep.F_quad_sq_at_u
    )
    adv_quad: Cell = (
        SENT_NOT_SQUEEZED if rep.adv_quad_fixed_u is None else rep.adv_quad_fixed_u
    )
    return {
        "status": status,
        "chi_re": state.chi.real,
        "chi_im": state.chi.imag,
        "eta_re": state.eta.real,
        "eta_im": state.eta.imag,
        "nbar": mset.nbar,
        "dq2": cov.VQQ,
        "dp2": cov.VPP,
        "vqp": cov.VQP,
        "dqdp": math.sqrt(cov.VQQ * cov.VPP),
        "vmin": cov.Vmin,
        "vmax": cov.Vmax,
        "phi_star": cov.phi_star,
        "u": cov.u,
        "s_db": cov.S_dB,
        "g2": g2_cell,
        "f_phase": rep.F_phase,
        "f_quad_env": rep.F_quad_env,
        "f_phase_sq_at_nbar": rep.F_phase_sq_at_nbar,
        "f_phase_sq_at_u": rep.F_phase_sq_at_u,
        "f_quad_sq_at_u": quad_bench,
        "adv_phase_nbar": rep.adv_phase_fixed_nbar,
        "adv_phase_u": rep.adv_phase_fixed_u,
        "adv_quad_u": adv_quad,
    }


def masked_state_cells(status: str) -> dict[str, Cell]:
    cells: dict[str, Cell] = {c: status for c in STATE_COLUMNS}
    cells["status"] = status
    return cells


# ---------------------------------------------------------------------------
# scan kinds


def _span_scan_rows(r_values, delta_grid) -> list[dict[str, Cell]]:
    """Q-axis span optimum over (r, Delta) at equal strengths, theta = 0."""
    rows: list[dict[str, Cell]] = []
    for r in r_values:
        xi = SqueezeParams(float(r), 0.0)
        bench = 0.5 * math.exp(-2.0 * float(r))
        for D in delta_grid:
            zeta = SqueezeParams(float(r), -float(D))
            row: dict[str, Cell] = {"r": float(r), "delta": float(D)}
            try:
                opt = span_minimum(xi, zeta, axis="Q")
                st = JanusState(xi, zeta, *opt.coefficients)
                row.update(state_block(st))
                row["ratio_re"] = opt.ratio.real
                row["ratio_im"] = opt.ratio.imag
            except DegenerateSpanError:
                # Collapsed span: report the identical-state limit, flagged.
                st = JanusState(xi, zeta, 1.0 + 0j, 0j)
                row.update(state_block(st, status=SENT_SPAN_COLLAPSED))
                row["ratio_re"] = 0.0
                row["ratio_im"] = 0.0
            row["dq2_sq_bench"] = bench
            rows.append(row)
    return rows


_SPAN_COLUMNS = ["r", "delta", *STATE_COLUMNS, "ratio_re", "ratio_im", "dq2_sq_bench"]


def scan_fig1(delta_points: int = 400, r_values=(0.3, 0.6, 1.0)) -> ScanResult:
    """Optimal Q variance vs Delta at a few squeeze strengths (endpoints kept)."""
    dgrid = np.linspace(0.0, 2.0 * np.pi, delta_points)
    return ScanResult("fig1", list(_SPAN_COLUMNS), _span_scan_rows(r_values, dgrid))


def scan_fig2(n_r: int = 200, n_delta: int = 200) -> ScanResult:
    """Optimal Q variance landscape over (r, Delta), Delta strictly interior."""
    rgrid = np.linspace(0.05, 1.5, n_r)
    dgrid = np.linspace(0.0, 2.0 * np.pi, n_delta + 2)[1:-1]
    return ScanResult("fig2", list(_SPAN_COLUMNS), _span_scan_rows(rgrid, dgrid))


_COEFF_COLUMNS = ["r", "Delta", "eta_mag", "delta", *STATE_COLUMNS]


def _coeff_scan_rows(r_values, eta_grid, delta_grid, Delta: float) -> list[dict[str, Cell]]:
    """Coefficient-plane scan at fixed constituents (equal strengths)."""
    rows: list[dict[str, Cell]] = []
    for r in r_values:
        xi = SqueezeParams(float(r), 0.0)
        zeta = SqueezeParams(float(r), -Delta)
        for em in eta_grid:
            for de in delta_grid:
                row: dict[str, Cell] = {
                    "r": float(r),
                    "Delta": Delta,
                    "eta_mag": float(em),
                    "delta": float(de),
                }
                try:
                    st = solve_coefficients(xi, zeta, float(em), float(de))
                    row.update(state_block(st))
                except InadmissibleCoefficientsError:
                    row.update(masked_state_cells(SENT_INADMISSIBLE))
                rows.append(row)
    return rows


def scan_fig3(n_eta: int = 200, n_delta: int = 200, r: float = 0.34) -> ScanResult:
    """Coefficient plane (|eta|, delta) at r = s, antiphase constituents."""
    eta_grid = np.linspace(0.0, 1.2, n_eta)
    delta_grid = np.linspace(0.0, 2.0 * np.pi, n_delta, endpoint=False)
    return ScanResult(
        "fig3", list(_COEFF_COLUMNS), _coeff_scan_rows([r], eta_grid, delta_grid, math.pi)
    )


def scan_fig4(
    n_eta: int = 200, n_delta: int = 200, r_values=(0.15, 0.34, 0.6, 1.0)
) -> ScanResult:
    """Same coefficient plane, several squeeze strengths (scatter source)."""
    eta_grid = np.linspace(0.0, 1.2, n_eta)
    delta_grid = np.linspace(0.0, 2.0 * np.pi, n_delta, endpoint=False)
    return ScanResult(
        "fig4", list(_COEFF_COLUMNS), _coeff_scan_rows(r_values, eta_grid, delta_grid, math.pi)
    )


# Representative strong-enhancement state (chi, eta) = (1.15, -0.32) at
# x = y = 1/2, Delta = pi; the landscape annotation and the single-point
# report examples both refer to it.
REPR_RATIO = -0.32 / 1.15
REPR_DELTA = math.pi


def scan_fig5(n_t: int = 300, n_delta: int = 300) -> ScanResult:
    """Quadratic-QFI enhancement landscape over (t, Delta) at x = y = 1/2.

    Exactly one row carries starred = 1: the grid cell nearest the
    representative state, where the log-ratio exceeds one.
    """
    r0 = math.atanh(math.sqrt(0.5))
    tgrid = np.linspace(-3.0, 3.0, n_t)
    dgrid = np.linspace(0.0, 2.0 * np.pi, n_delta + 2)[1:-1]
    columns = ["t", "delta_big", *STATE_COLUMNS, "log10_ratio", "starred"]
    star_i = int(np.argmin(np.abs(tgrid - REPR_RATIO)))
    star_j = int(np.argmin(np.abs(dgrid - REPR_DELTA)))
    rows: list[dict[str, Cell]] = []
    xi = SqueezeParams(r0, 0.0)
    for i, t in enumerate(tgrid):
        for j, D in enumerate(dgrid):
            zeta = SqueezeParams(r0, -float(D))
            row: dict[str, Cell] = {"t": float(t), "delta_big": float(D)}
            row["starred"] = i == star_i and j == star_j
            try:
                st = from_ratio(xi, zeta, float(t))
                block = state_block(st)
                row.update(block)
                quad_bench = block["f_quad_sq_at_u"]
                if isinstance(quad_bench, str):
                    row["log10_ratio"] = SENT_NOT_SQUEEZED
                else:
                    row["log10_ratio"] = math.log10(
                        float(block["f_quad_env"]) / float(quad_bench)
                    )
            except DegenerateSpanError:
                row.update(masked_state_cells(SENT_SPAN_COLLAPSED))
                row["log10_ratio"] = SENT_SPAN_COLLAPSED
            rows.append(row)
    return ScanResult("fig5", columns, rows)


def scan_fig6a(samples: int = 500, seed: int = DEFAULT_SEED) -> ScanResult:
    """Random Janus states: principal variance against the photon-number no-go."""
    rng = np.random.default_rng(seed)
    columns = ["idx", "r", "s", "theta", "phi", "t", *STATE_COLUMNS, "no_go_bound"]
    rows: list[dict[str, Cell]] = []
    attempts = 0
    while len(rows) < samples:
        attempts += 1
        if attempts > 100 * samples:
            raise RuntimeError("random state sampling failed to converge")
        r = rng.uniform(0.0, 2.0)
        s = rng.uniform(0.0, 2.0)
        theta = rng.uniform(0.0, 2.0 * np.pi)
        phi = rng.uniform(0.0, 2.0 * np.pi)
        t = rng.uniform(-3.0, 3.0)
        try:
            st = from_ratio(SqueezeParams(r, theta), SqueezeParams(s, phi), t)
        except DegenerateSpanError:
            continue  # measure-zero collapsed draw: redraw
        block = state_block(st)
        row: dict[str, Cell] = {
            "idx": len(rows),
            "r": r,
            "s": s,
            "theta": theta,
            "phi": phi,
            "t": t,
        }
        row.update(block)
        row["no_go_bound"] = no_go_bound(float(block["nbar"]))
        rows.append(row)
    return ScanResult("fig6a", columns, rows)


def scan_fig6bc(n_t: int = 801, s: float = 0.8, t_span=(-12.0, 4.0)) -> ScanResult:
    """Auxiliary vacuum + squeezed family along t at fixed s."""
    columns = [
        "s",
        "t",
        "kappa",
        "norm",
        "lambda",
        "dq2",
        "f_phase",
        "dq2_sq_bench",
        "f_phase_sq_bench",
        "t_threshold",
        "adv_dq",
        "adv_qfi",
        "adv_both",
    ]
    ns = math.sinh(s) ** 2
    dq_bench = 0.5 * math.exp(-2.0 * s)
    f_bench = phase_qfi_squeezed(ns)
    thr = aux_t_threshold(s)
    rows: list[dict[str, Cell]] = []
    for t in np.linspace(t_span[0], t_span[1], n_t):
        pt = auxiliary_family(s, float(t))
        rows.append(
            {
                "s": s,
                "t": float(t),
                "kappa": pt.kappa,
                "norm": pt.Norm,
                "lambda": pt.Lambda,
                "dq2": pt.DQ2,
                "f_phase": pt.F_phase,
                "dq2_sq_bench": dq_bench,
                "f_phase_sq_bench": f_bench,
                "t_threshold": thr,
                "adv_dq": pt.dq_beats_squeezed,
                "adv_qfi": pt.qfi_beats_squeezed,
                "adv_both": pt.dq_beats_squeezed and pt.qfi_beats_squeezed,
            }
        )
    return ScanResult("fig6bc", columns, rows)


def scan_fig7(
    n_eta: int = 200,
    n_delta: int = 200,
    r: float = 1.0,
    s: float = 0.55,
    delta: float = math.pi,
) -> ScanResult:
    """Unequal strengths: advantage regions over (|eta|, Delta) at fixed delta."""
    columns = [
        "r",
        "s",
        "delta",
        "eta_mag",
        "Delta",
        *STATE_COLUMNS,
        "dq2_best_const",
        "f_phase_best_const",
        "adv_dq2_const",
        "adv_fphase_const",
        "adv_both",
    ]
    eta_grid = np.linspace(0.0, 1.2, n_eta)
    Dgrid = np.linspace(0.0, 2.0 * np.pi, n_delta)
    xi = SqueezeParams(r, 0.0)
    f_best = max(phase_qfi_squeezed(xi.nbar), phase_qfi_squeezed(SqueezeParams(s).nbar))
    rows: list[dict[str, Cell]] = []
    for D in Dgrid:
        zeta = SqueezeParams(s, -float(D))
        mats = span_matrices(xi, zeta, axis="Q")
        dq_best = min(mats.A, mats.B)
        for em in eta_grid:
            row: dict[str, Cell] = {
                "r": r,
                "s": s,
                "delta": delta,
                "eta_mag": float(em),
                "Delta": float(D),
            }
            try:
                st = solve_coefficients(xi, zeta, float(em), delta)
                block = state_block(st)
                row.update(block)
                adv_dq = beats_benchmark(dq_best, float(block["dq2"]))
                adv_f = beats_benchmark(float(block["f_phase"]), f_best)
                row["adv_dq2_const"] = adv_dq
                row["adv_fphase_const"] = adv_f
                row["adv_both"] = adv_dq and adv_f
            except InadmissibleCoefficientsError:
                row.update(masked_state_cells(SENT_INADMISSIBLE))
                row["adv_dq2_const"] = SENT_INADMISSIBLE
                row["adv_fphase_const"] = SENT_INADMISSIBLE
                row["adv_both"] = SENT_INADMISSIBLE
            row["dq2_best_const"] = dq_best
            row["f_phase_best_const"] = f_best
            rows.append(row)
    return ScanResult("fig7", columns, rows)


SCAN_KINDS: dict[str, Callable[..., ScanResult]] = {
    "fig1": scan_fig1,
    "fig2": scan_fig2,
    "fig3": scan_fig3,
    "fig4": scan_fig4,
    "fig5": scan_fig5,
    "fig6a": scan_fig6a,
    "fig6bc": scan_fig6bc,
    "fig7": scan_fig7,
}


def build_scan(kind: str, grid: tuple[int, ...] | None = None, seed: int | None = None) -> ScanResult:
    """Dispatch a scan kind with optional grid override.

    grid means: points (1-tuple) or rows x cols (2-tuple); fig6a takes a
    sample count, fig6bc a t-point count, fig1 a Delta-point count.
    """
    if kind not in SCAN_KINDS:
        raise ValueError(f"unknown scan kind {kind!r}; choose from {sorted(SCAN_KINDS)}")
    if grid is not None and any(n < 2 for n in grid):
        raise ValueError(f"grid point counts must be at least 2, got {grid}")
    if kind == "fig1":
        n = grid[0] if grid else 400
        return scan_fig1(delta_points=n)
    if kind == "fig2":
        n1, n2 = _two(grid, 200)
        return scan_fig2(n_r=n1, n_delta=n2)
    if kind == "fig3":
        n1, n2 = _two(grid, 200)
        return scan_fig3(n_eta=n1, n_delta=n2)
    if kind == "fig4":
        n1, n2 = _two(grid, 200)
        return scan_fig4(n_eta=n1, n_delta=n2)
    if kind == "fig5":
        n1, n2 = _two(grid, 300)
        return scan_fig5(n_t=n1, n_delta=n2)
    if kind == "fig6a":
        n = grid[0] if grid else 500
        return scan_fig6a(samples=n, seed=DEFAULT_SEED if seed is None else seed)
    if kind == "fig6bc":
        n = grid[0] if grid else 801
        return scan_fig6bc(n_t=n)
    n1, n2 = _two(grid, 200)
    return scan_fig7(n_eta=n1, n_delta=n2)


def _two(grid: tuple[int, ...] | None, default: int) -> tuple[int, int]:
    if not grid:
        return default, default
    if len(grid) == 1:
        return grid[0], grid[0]
    return grid[0], grid[1]


# ---------------------------------------------------------------------------
# serialization


def format_float(v: float) -> str:
    return format(float(v), ".17g")


def format_cell(v: Cell) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format_float(v)


def json_cell(v: Cell) -> str:
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format_float(v)


def write_csv(result: ScanResult, stream: TextIO) -> None:
    stream.write(",".join(result.columns) + "\n")
    for row in result.rows:
        stream.write(",".join(format_cell(row[c]) for c in result.columns) + "\n")


def write_json(result: ScanResult, stream: TextIO) -> None:
    stream.write("{\n")
    stream.write(f'  "kind": {json.dumps(result.kind)},\n')
    stream.write('  "columns": [' + ", ".join(json.dumps(c) for c in result.columns) + "],\n")
    stream.write('  "rows": [\n')
    last = len(result.rows) - 1
    for i, row in enumerate(result.rows):
        cells = ", ".join(json_cell(row[c]) for c in result.columns)
        tail = "" if i == last else ","
        stream.write(f"    [{cells}]{tail}\n")
    stream.write("  ]\n}\n")
