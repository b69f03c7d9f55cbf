"""Command-line surface: ``figures <id|all> --data-dir DIR --out-dir DIR``.

Exit codes mirror the data CLI: 0 success, 1 usage error, 2 data error
(missing file, empty table, missing column, schema violation).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .io import TableError, load_table
from .render import FIGURES, save_figure

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures remapped from its default exit 2 to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="figures", description=__doc__.splitlines()[0])
    parser.add_argument(
        "which", metavar="id", help="figure number (1-7) or 'all'"
    )
    parser.add_argument(
        "--data-dir", required=True, help="directory holding the <kind>.csv tables"
    )
    parser.add_argument(
        "--out-dir", required=True, help="directory for the rendered fig<N>.png files"
    )
    return parser


def _figure_ids(which: str) -> list[int]:
    if which == "all":
        return sorted(FIGURES)
    token = which[3:] if which.startswith("fig") else which
    try:
        fid = int(token)
    except ValueError:
        fid = -1
    if fid not in FIGURES:
        raise UsageError(f"unknown figure {which!r}: choose 1-7 or 'all'")
    return [fid]


class UsageError(Exception):
    pass


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return int(exc.code or 0)
    try:
        fids = _figure_ids(args.which)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    data_dir = Path(args.data_dir)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for fid in fids:
        try:
            tables = {
                stem: load_table(data_dir / f"{stem}.csv")
                for stem in FIGURES[fid].stems
            }
            out_path = out_dir / f"fig{fid}.png"
            save_figure(fid, tables, out_path)
        except FileNotFoundError as exc:
            print(f"{parser.prog}: missing input: {exc}", file=sys.stderr)
            return EXIT_DATA
        except TableError as exc:
            print(f"{parser.prog}: bad table: {exc}", file=sys.stderr)
            return EXIT_DATA
        print(f"wrote {out_path}")
    return EXIT_OK


def entry() -> None:
    raise SystemExit(main(argv=None))
