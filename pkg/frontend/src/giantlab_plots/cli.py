"""giantlab-plots: render sweep figures from the CSV and summary files."""

from __future__ import annotations

import argparse
import sys

from .figures import render
from .inputs import ReportInput, SchemaError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="giantlab-plots",
        description="Render figures from a giantlab sweep.")
    parser.add_argument("--csv", required=True,
                        help="sweep CSV (one row per grid point and trial)")
    parser.add_argument("--forecast", required=True,
                        help="sweep summary JSON with per-point forecasts")
    parser.add_argument("--out", required=True,
                        help="output directory for the SVG figures")
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    inp = ReportInput(args.csv, args.forecast, args.out)
    try:
        written = render(inp)
    except SchemaError as exc:
        print(f"giantlab-plots: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"giantlab-plots: {exc}", file=sys.stderr)
        return 3
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
