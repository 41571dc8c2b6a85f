"""Command-line front end: one subcommand per figure kind."""

import argparse
import sys
from typing import List, Optional

from .figures import FigureSpec, render
from .io import SchemaMismatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hystwave-plots",
        description="Render figures from hystwave CLI artifacts.",
    )
    sub = parser.add_subparsers(dest="kind", required=True)

    overlay = sub.add_parser("trajectory_overlay",
                             help="(load, multiplier) path over the limit loop")
    overlay.add_argument("--compare", required=True, help="compare.csv")
    overlay.add_argument("--loop", help="loop.json (optional loop boundary)")

    snaps = sub.add_parser("snapshot_grid", help="grid of ensemble snapshots")
    snaps.add_argument("--snapshots", nargs="+", required=True,
                       help="snapshot CSV files")

    wave = sub.add_parser("wave_profile", help="wave profile with envelopes")
    wave.add_argument("--profile", required=True, help="profile.csv")
    wave.add_argument("--wave", required=True, help="wave.json")

    spectrum = sub.add_parser("spectrum_scatter",
                              help="point spectrum in the complex plane")
    spectrum.add_argument("--spectrum", required=True, help="spectrum.json")
    spectrum.add_argument("--chargrid", help="chargrid.csv (zero-set contours)")

    traces = sub.add_parser("oscillation_traces",
                            help="interface width traces from diagnostics")
    traces.add_argument("--diagnostics", nargs="+", required=True,
                        help="diagnostics.csv files")

    for sp in sub.choices.values():
        sp.add_argument("--out", required=True, help="output image (.png or .svg)")
        sp.add_argument("--title", help="figure title override")
    return parser


def spec_from_args(args: argparse.Namespace) -> FigureSpec:
    inputs = {
        key: val
        for key, val in vars(args).items()
        if key not in ("kind", "out", "title") and val is not None
    }
    style = {"title": args.title} if args.title else {}
    return FigureSpec(kind=args.kind, inputs=inputs, output=args.out, style=style)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = render(spec_from_args(args))
    except (SchemaMismatch, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
