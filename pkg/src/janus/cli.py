"""Command-line surface: point reports, figure-data scans, verification.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 verification
failure.  All output is deterministic — fixed float formatting (17
significant digits), fixed key and row order — so identical command
lines produce byte-identical files.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path

from .fock import CutoffInsufficientError
from .moments import G2UndefinedError, g2, moment_set
from .qfi import benchmarks, quadratic_qfi, vartheta_star
from .quadrature import covariance
from .scans import (
    SCAN_KINDS,
    SENT_G2_UNDEFINED,
    SENT_NOT_SQUEEZED,
    build_scan,
    format_cell,
    json_cell,
    write_csv,
    write_json,
)
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
from .verify import run_verification

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures remapped from its default exit 2 to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _c(v: complex) -> dict:
    return {"re": v.real, "im": v.imag}


def _dump_doc(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        body = ",\n".join(
            f"{pad}  {json.dumps(str(k))}: {_dump_doc(v, indent + 1)}"
            for k, v in value.items()
        )
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_dump_doc(v, indent) for v in value) + "]"
    if value is None:
        return "null"
    return json_cell(value)


def _flatten(prefix: str, value, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    elif value is None:
        rows.append((prefix, "null"))
    else:
        rows.append((prefix, format_cell(value)))


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# ---------------------------------------------------------------------------
# point


def _resolve_state(args) -> tuple[JanusState, str]:
    xi = SqueezeParams(args.r, args.theta)
    zeta = SqueezeParams(args.s, args.phi)
    modes = [
        args.vacuum,
        args.eta_mag is not None,
        args.ratio is not None,
        args.optimize_q,
        args.optimize_p,
    ]
    if sum(bool(m) for m in modes) > 1:
        raise UsageError(
            "options --vacuum / --eta-mag / --ratio / --optimize-q / --optimize-p "
            "are mutually exclusive"
        )
    if args.vacuum:
        vac = SqueezeParams(0.0, 0.0)
        return JanusState(vac, vac, 1.0 + 0j, 0j), "vacuum"
    if args.optimize_q or args.optimize_p:
        axis = "Q" if args.optimize_q else "P"
        opt = span_minimum(xi, zeta, axis=axis)
        return JanusState(xi, zeta, *opt.coefficients), f"optimize-{axis.lower()}"
    if args.ratio is not None:
        return from_ratio(xi, zeta, args.ratio), "ratio"
    if args.eta_mag is not None:
        return solve_coefficients(xi, zeta, args.eta_mag, args.delta), "coefficients"
    raise UsageError(
        "choose a coefficient mode: --vacuum, --eta-mag [--delta], --ratio, "
        "--optimize-q or --optimize-p"
    )


class UsageError(Exception):
    pass


def _point_document(args) -> dict:
    state, mode = _resolve_state(args)
    mset = moment_set(state)
    cov = covariance(mset)
    rep = benchmarks(mset)
    try:
        g2_val = g2(mset)
    except G2UndefinedError:
        g2_val = SENT_G2_UNDEFINED

    axis = "P" if args.optimize_p else ("Q" if args.optimize_q else args.axis)
    mats = span_matrices(state.xi, state.zeta, axis=axis)
    span_doc: dict = {
        "axis": axis,
        "A": mats.A,
        "B": mats.B,
        "C": _c(mats.C),
        "S": _c(mats.S),
    }
    try:
        opt = span_minimum(state.xi, state.zeta, axis=axis)
        span_doc.update(
            {
                "degenerate": False,
                "lambda_minus": opt.lambda_minus,
                "lambda_plus": opt.lambda_plus,
                "ratio": _c(opt.ratio),
                "chi_opt": _c(opt.coefficients[0]),
                "eta_opt": _c(opt.coefficients[1]),
                "discriminant": opt.discriminant,
            }
        )
    except DegenerateSpanError:
        span_doc["degenerate"] = True

    return {
        "params": {
            "r": state.xi.r,
            "s": state.zeta.r,
            "theta": state.xi.theta,
            "phi": state.zeta.theta,
            "mode": mode,
        },
        "state": {
            "chi": _c(state.chi),
            "eta": _c(state.eta),
            "overlap": _c(overlap(state.xi, state.zeta)),
            "norm_residual": state.norm_residual(),
        },
        "moments": {
            "N1": mset.N1,
            "N2": mset.N2,
            "M2": _c(mset.M2),
            "M4": _c(mset.M4),
            "nbar": mset.nbar,
            "m": _c(mset.m),
            "mean_a": _c(mset.mean_a),
        },
        "covariance": {
            "VQQ": cov.VQQ,
            "VPP": cov.VPP,
            "VQP": cov.VQP,
            "Vmin": cov.Vmin,
            "Vmax": cov.Vmax,
            "phi_star": cov.phi_star,
            "u": cov.u,
            "S_dB": cov.S_dB,
        },
        "g2": g2_val,
        "qfi": {
            "F_phase": rep.F_phase,
            "F_quad_env": rep.F_quad_env,
            "F_quad_at_0": quadratic_qfi(mset, 0.0),
            "F_quad_at_pi_2": quadratic_qfi(mset, 0.5 * math.pi),
            "vartheta_star": vartheta_star(mset),
            "u": rep.u,
            "nbar": rep.nbar,
            "F_phase_sq_at_nbar": rep.F_phase_sq_at_nbar,
            "F_phase_sq_at_u": rep.F_phase_sq_at_u,
            "F_quad_sq_at_u": SENT_NOT_SQUEEZED
            if rep.F_quad_sq_at_u is None
            else rep.F_quad_sq_at_u,
            "not_squeezed": rep.not_squeezed,
            "adv_phase_fixed_nbar": rep.adv_phase_fixed_nbar,
            "adv_phase_fixed_u": rep.adv_phase_fixed_u,
            "adv_quad_fixed_u": SENT_NOT_SQUEEZED
            if rep.adv_quad_fixed_u is None
            else rep.adv_quad_fixed_u,
        },
        "span": span_doc,
    }


def cmd_point(args) -> int:
    doc = _point_document(args)
    if args.format == "csv":
        rows: list[tuple[str, str]] = []
        _flatten("", doc, rows)
        text = "key,value\n" + "".join(f"{k},{v}\n" for k, v in rows)
    else:
        text = _dump_doc(doc) + "\n"
    _write_out(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# scan / figures-data


def _parse_grid(spec: str | None) -> tuple[int, ...] | None:
    if spec is None:
        return None
    parts = spec.lower().replace("x", " ").split()
    try:
        grid = tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"cannot parse --grid {spec!r}: expected N or N1xN2") from None
    if not grid or len(grid) > 2:
        raise UsageError(f"--grid takes one or two counts, got {spec!r}")
    if any(n < 2 for n in grid):
        raise UsageError(f"--grid point counts must be at least 2, got {spec!r}")
    return grid


def cmd_scan(args) -> int:
    grid = _parse_grid(args.grid)
    result = build_scan(args.kind, grid=grid, seed=args.seed)
    buf = io.StringIO()
    if args.format == "json":
        write_json(result, buf)
    else:
        write_csv(result, buf)
    _write_out(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_figures_data(args) -> int:
    kinds = sorted(SCAN_KINDS) if args.kinds is None else args.kinds.split(",")
    for kind in kinds:
        if kind not in SCAN_KINDS:
            raise UsageError(
                f"unknown scan kind {kind!r}; choose from {sorted(SCAN_KINDS)}"
            )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for kind in kinds:
        result = build_scan(kind, grid=None, seed=args.seed)
        path = out_dir / f"{kind}.csv"
        with open(path, "w") as fh:
            write_csv(result, fh)
        print(f"wrote {path} ({len(result.rows)} rows)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    summary = run_verification(samples=args.samples, r_cap=args.r_cap, seed=args.seed)
    lines = [
        f"verify: {summary.samples} samples, r cap {summary.r_cap:g}, "
        f"seed {summary.seed}, max oracle cutoff {summary.max_cutoff}"
    ]
    for chk in summary.checks:
        status = "pass" if chk.passed else "FAIL"
        lines.append(
            f"  {chk.name:<24} {chk.samples - chk.failures:>5}/{chk.samples:<5} "
            f"{status}   worst {chk.worst:.3e}"
        )
    lines.append(
        f"result: {'PASS' if summary.passed else 'FAIL'} ({len(summary.checks)} checks)"
    )
    _write_out("\n".join(lines) + "\n", args.out)
    return EXIT_OK if summary.passed else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="janus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pt = sub.add_parser("point", help="evaluate one state and print a full report")
    pt.add_argument("--r", type=float, default=0.0, help="squeeze magnitude of |xi>")
    pt.add_argument("--s", type=float, default=0.0, help="squeeze magnitude of |zeta>")
    pt.add_argument("--theta", type=float, default=0.0, help="squeeze phase of |xi>")
    pt.add_argument("--phi", type=float, default=0.0, help="squeeze phase of |zeta>")
    pt.add_argument("--eta-mag", type=float, default=None, help="|eta| (with --delta)")
    pt.add_argument("--delta", type=float, default=0.0, help="coefficient phase delta")
    pt.add_argument("--ratio", type=float, default=None, help="real ratio t = eta/chi")
    pt.add_argument("--vacuum", action="store_true", help="the vacuum state")
    pt.add_argument("--optimize-q", action="store_true", help="span-optimal Q coefficients")
    pt.add_argument("--optimize-p", action="store_true", help="span-optimal P coefficients")
    pt.add_argument("--axis", choices=("Q", "P"), default="Q", help="span report axis")
    pt.add_argument("--format", choices=("json", "csv"), default="json")
    pt.add_argument("--out", default=None, help="output path (default stdout)")
    pt.set_defaults(func=cmd_point)

    sc = sub.add_parser("scan", help="write one figure-data table")
    sc.add_argument("kind", choices=sorted(SCAN_KINDS), help="scan kind")
    sc.add_argument("--grid", default=None, help="grid override: N or N1xN2")
    sc.add_argument("--seed", type=int, default=None, help="sampling seed (fig6a)")
    sc.add_argument("--format", choices=("csv", "json"), default="csv")
    sc.add_argument("--out", default=None, help="output path (default stdout)")
    sc.set_defaults(func=cmd_scan)

    vf = sub.add_parser("verify", help="run the oracle cross-verification suite")
    vf.add_argument("--samples", type=int, default=200)
    vf.add_argument("--r-cap", type=float, default=1.5)
    vf.add_argument("--seed", type=int, default=12345)
    vf.add_argument("--out", default=None, help="output path (default stdout)")
    vf.set_defaults(func=cmd_verify)

    fd = sub.add_parser("figures-data", help="write every figure CSV at default resolution")
    fd.add_argument("--out-dir", required=True, help="directory for <kind>.csv files")
    fd.add_argument("--kinds", default=None, help="comma-separated subset of kinds")
    fd.add_argument("--seed", type=int, default=None, help="sampling seed (fig6a)")
    fd.set_defaults(func=cmd_figures_data)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InadmissibleCoefficientsError as exc:
        print(f"{parser.prog}: inadmissible coefficients: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (
        DegenerateSpanError,
        G2UndefinedError,
        CutoffInsufficientError,
        ArithmeticError,
        ValueError,
        RuntimeError,
        OSError,
    ) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def entry() -> None:
    raise SystemExit(main(argv=None))
