"""Command-line entry point: render one panel from CSV inputs.

    canalyzer-figures --panel fig2a --in sweep_records.csv --in fig2a.csv \
        --out fig2a.png
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import PANELS, FigureError, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canalyzer-figures",
        description="Render figure panels from canalyzer CSV outputs.",
    )
    parser.add_argument("--panel", required=True, choices=PANELS)
    parser.add_argument(
        "--in",
        dest="inputs",
        action="append",
        required=True,
        type=Path,
        metavar="CSV",
        help="input CSV; repeat for panels needing several files",
    )
    parser.add_argument("--out", required=True, type=Path, metavar="IMAGE")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(args.panel, tuple(args.inputs), args.out)
        written = render(spec)
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {written}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
