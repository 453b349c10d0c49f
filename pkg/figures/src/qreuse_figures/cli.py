"""Command line rendering: one subcommand per figure kind, plus ``all``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .datasets import SchemaError
from .render import KINDS, FigureSpec, render

_DATASET_GLOBS = {
    "param-bars": ("cells.csv",),
    "alpha-gamma-grid": ("grid_mean_eps*.csv",),
    "per-wn-timeseries": ("timeseries_cell*.csv",),
    "per-wn-means": ("per_network_means.csv",),
    "action-probabilities": ("action_frequencies.csv",),
}


def _render_one(kind: str, args) -> int:
    options = {}
    if args.title:
        options["title"] = args.title
    if args.dpi:
        options["dpi"] = args.dpi
    if getattr(args, "cell", None) is not None:
        options["cell"] = args.cell
    if getattr(args, "std_input", None):
        options["std_input"] = args.std_input
    out = render(FigureSpec(kind=kind, input=args.dataset,
                            output=args.output, options=options))
    print(f"wrote {out}")
    return 0


def _render_all(args) -> int:
    indir = Path(args.directory)
    outdir = Path(args.output)
    if not indir.is_dir():
        raise SchemaError(f"not a directory: {indir}")
    count = 0
    for kind in KINDS:
        for pattern in _DATASET_GLOBS[kind]:
            for path in sorted(indir.glob(pattern)):
                dest = outdir / f"{kind}-{path.stem}.png"
                render(FigureSpec(kind=kind, input=path, output=dest))
                print(f"wrote {dest}")
                count += 1
    if count == 0:
        print(f"no renderable datasets found in {indir}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qreuse-figures",
        description="Render simulator sweep datasets as figures")
    sub = parser.add_subparsers(dest="command", required=True)

    for kind in KINDS:
        p = sub.add_parser(kind, help=f"render a {kind} figure")
        p.add_argument("dataset", help="input CSV dataset")
        p.add_argument("-o", "--output", required=True, help="image path")
        p.add_argument("--title")
        p.add_argument("--dpi", type=int)
        if kind == "action-probabilities":
            p.add_argument("--cell", type=int, help="cell index to draw")
        if kind == "alpha-gamma-grid":
            p.add_argument("--std-input", dest="std_input",
                           help="std dataset (default: grid_mean -> grid_std)")
        p.set_defaults(kind=kind)

    p = sub.add_parser("all", help="render every dataset in a sweep directory")
    p.add_argument("directory", help="directory written by 'qreuse sweep/report'")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(kind=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "all":
            return _render_all(args)
        return _render_one(args.kind, args)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
