"""Command line front end: input paths in, image files out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import (
    plot_average_distance,
    plot_probability_comparison,
    plot_weight_histograms,
)
from .loader import (
    SchemaError,
    load_brute_force_report,
    load_campaign,
    load_histogram_csv,
    load_summary,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotsuite", description="Render figures from codefusion logs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("avg-distance", help="mean distance per trial, one curve per log")
    p.add_argument("summaries", nargs="+", help="summary.json files")
    p.add_argument("--output", required=True)
    p.add_argument("--format", choices=["png", "svg"], default=None)

    p = sub.add_parser("probability", help="RL frequency vs analytic random search")
    p.add_argument("--summary", required=True)
    p.add_argument("--brute-force-report", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--format", choices=["png", "svg"], default=None)

    p = sub.add_parser("histograms", help="paired logical-weight histograms")
    p.add_argument("hist_a")
    p.add_argument("hist_b")
    p.add_argument("--output", required=True)
    p.add_argument("--format", choices=["png", "svg"], default=None)
    p.add_argument("--include-stabilizers", action="store_true")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "avg-distance":
            logs = [load_campaign(Path(p)) for p in args.summaries]
            plot_average_distance(logs, Path(args.output), fmt=args.format)
        elif args.command == "probability":
            summary = load_summary(Path(args.summary))
            report = load_brute_force_report(Path(args.brute_force_report))
            plot_probability_comparison(
                summary, report, Path(args.output), fmt=args.format
            )
        elif args.command == "histograms":
            hist_a = load_histogram_csv(Path(args.hist_a))
            hist_b = load_histogram_csv(Path(args.hist_b))
            plot_weight_histograms(
                hist_a,
                hist_b,
                Path(args.output),
                fmt=args.format,
                include_stabilizers=args.include_stabilizers,
            )
    except (SchemaError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
