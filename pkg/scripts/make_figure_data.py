"""Write every figure CSV (thin wrapper over `janus figures-data`).

Usage: python scripts/make_figure_data.py [out_dir] [--kinds fig1,fig5]
"""

import argparse

from janus.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out_dir", nargs="?", default="data")
    ap.add_argument("--kinds", default=None, help="comma-separated subset")
    ap.add_argument("--seed", default=None, help="sampling seed (fig6a)")
    args = ap.parse_args()
    argv = ["figures-data", "--out-dir", args.out_dir]
    if args.kinds:
        argv += ["--kinds", args.kinds]
    if args.seed is not None:
        argv += ["--seed", str(args.seed)]
    return cli_main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
