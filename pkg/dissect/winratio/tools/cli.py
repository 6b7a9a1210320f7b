from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional

from dissect.winratio.analysis import (
    AnalysisRequest,
    OutputFormat,
    analyze,
    compare_pairs,
    render,
)
from dissect.winratio.core import Alpha, PairCounts
from dissect.winratio.exceptions import Error
from dissect.winratio.hypothesis import (
    NetBenefitTarget,
    RawTarget,
    WinRatioTarget,
    parse_tests,
    power,
    sample_size,
)
from dissect.winratio.intervals import NbMethod, WrMethod, parse_methods
from dissect.winratio.simulation import read_grid, reports_to_csv, reports_to_json, run_grid

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_WINRATIO", "CRITICAL"))

FORMAT_ENV = "DISSECT_WINRATIO_FORMAT"


class UsageError(Exception):
    pass


def _alpha(args: argparse.Namespace) -> Alpha:
    try:
        if args.z_critical is not None:
            return Alpha(args.alpha, args.z_critical)
        if args.exact_z:
            return Alpha(args.alpha)
        return Alpha.rounded(args.alpha)
    except ValueError as e:
        raise UsageError(str(e))


def _output_format(args: argparse.Namespace) -> OutputFormat:
    value = args.format or os.getenv(FORMAT_ENV) or OutputFormat.TEXT.value
    try:
        return OutputFormat(value)
    except ValueError:
        raise UsageError(f"Unknown output format {value!r}, choose from: text, csv, json")


def cmd_analyze(args: argparse.Namespace) -> str:
    if args.pairs is not None and args.hierarchy is None:
        raise UsageError("--pairs needs --hierarchy")

    try:
        request = AnalysisRequest(
            counts=PairCounts.parse(args.counts) if args.counts is not None else None,
            pair_file=args.pairs,
            hierarchy_file=args.hierarchy,
            alpha=_alpha(args),
            tests=parse_tests(args.tests),
            nb_methods=parse_methods(args.nb_methods, NbMethod),
            wr_methods=parse_methods(args.wr_methods, WrMethod),
            output_format=_output_format(args),
        )
    except ValueError as e:
        raise UsageError(str(e))

    return render(analyze(request), request.output_format)


def cmd_compare(args: argparse.Namespace) -> str:
    counts, decided = compare_pairs(args.pairs, args.hierarchy)
    output_format = _output_format(args)

    if output_format == OutputFormat.JSON:
        obj = {
            "counts": {
                "n_win": counts.n_win,
                "n_loss": counts.n_loss,
                "n_tie": counts.n_tie,
                "total": counts.total(),
            },
            "attribution": {name: {"wins": wins, "losses": losses} for name, (wins, losses) in decided.items()},
        }
        return json.dumps(obj, indent=2) + "\n"

    if output_format == OutputFormat.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["outcome", "wins", "losses"])
        for name, (wins, losses) in decided.items():
            writer.writerow([name, wins, losses])
        writer.writerow(["total", counts.n_win, counts.n_loss])
        return buf.getvalue()

    lines = [
        f"Pairs: {counts.total()} (wins {counts.n_win}, losses {counts.n_loss}, ties {counts.n_tie})",
        "",
        f"  {'outcome':<20}{'wins':>8}{'losses':>8}",
    ]
    for name, (wins, losses) in decided.items():
        lines.append(f"  {name:<20}{wins:>8}{losses:>8}")
    return "\n".join(lines) + "\n"


def cmd_design(args: argparse.Namespace) -> str:
    if args.nb is not None or args.wr is not None:
        if args.pwl is None:
            raise UsageError("--nb and --wr need --pwl")
        target = NetBenefitTarget(args.nb, args.pwl) if args.nb is not None else WinRatioTarget(args.wr, args.pwl)
    else:
        if args.pl is None:
            raise UsageError("--pw needs --pl")
        target = RawTarget(args.pw, args.pl)

    alpha = _alpha(args)
    try:
        n_pairs = sample_size(target, alpha, args.power)
    except ValueError as e:
        raise UsageError(str(e))

    pi_w, pi_l = target.probabilities()
    achieved = power(n_pairs, target, alpha)

    if _output_format(args) == OutputFormat.JSON:
        obj = {"n_pairs": n_pairs, "pi_w": pi_w, "pi_l": pi_l, "alpha": alpha.value, "power": achieved}
        return json.dumps(obj, indent=2) + "\n"

    return (
        f"Pairs: {n_pairs}\n"
        f"Implied pi_w: {pi_w:.4f}, pi_l: {pi_l:.4f}, pi_t: {1 - pi_w - pi_l:.4f}\n"
        f"Power at {n_pairs} pairs: {achieved:.4f}\n"
    )


def cmd_simulate(args: argparse.Namespace) -> str:
    if args.workers < 1:
        raise UsageError(f"--workers must be at least 1, got {args.workers}")

    output_format = args.format or ("both" if args.out else "csv")
    if output_format == "both" and not args.out:
        raise UsageError("--format both needs --out")

    scenarios = read_grid(args.grid, replicates=args.replicates, seed=args.seed)
    log.info("Running %d scenarios from %s with %d workers", len(scenarios), args.grid, args.workers)
    reports = run_grid(scenarios, workers=args.workers)

    rendered = {}
    if output_format in ("csv", "both"):
        rendered["csv"] = reports_to_csv(reports)
    if output_format in ("json", "both"):
        rendered["json"] = reports_to_json(reports)

    if not args.out:
        return rendered[output_format]

    args.out.mkdir(parents=True, exist_ok=True)
    written = []
    for suffix, content in rendered.items():
        path = args.out / f"{args.grid.stem}.{suffix}"
        with open(path, "w", newline="") as fh:
            fh.write(content)
        written.append(str(path))

    return "".join(f"Wrote {path}\n" for path in written)


def _add_alpha_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=0.05, help="two-sided significance level")
    critical = parser.add_mutually_exclusive_group()
    critical.add_argument(
        "--z-critical",
        type=float,
        default=None,
        help="fixed critical value (default: the normal quantile rounded to two decimals, 1.96 at alpha 0.05)",
    )
    critical.add_argument("--exact-z", action="store_true", help="use the unrounded normal quantile")


def _add_format_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=[member.value for member in OutputFormat],
        default=None,
        help=f"output format, defaults to ${FORMAT_ENV} or text",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="winratio",
        description="Matched-pair win ratio and net benefit inference.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="increase log verbosity")
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze_parser = subparsers.add_parser("analyze", help="test and estimate from counts or pair-level data")
    source = analyze_parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--counts", help="wins,losses,ties")
    source.add_argument("--pairs", type=Path, help="pair-level CSV file")
    analyze_parser.add_argument("--hierarchy", type=Path, help="outcome hierarchy file, required with --pairs")
    _add_alpha_arguments(analyze_parser)
    analyze_parser.add_argument("--tests", default="all", help="comma separated: z, z-pocock, exact (default: all)")
    analyze_parser.add_argument(
        "--nb-methods", default="all", help="comma separated: wald, mover-wilson, mover-ac (default: all)"
    )
    analyze_parser.add_argument(
        "--wr-methods",
        default="all",
        help="comma separated: pocock, wald, wald-log, fieller, mover-wilson, mover-ac (default: all)",
    )
    _add_format_argument(analyze_parser)
    analyze_parser.set_defaults(handler=cmd_analyze)

    compare_parser = subparsers.add_parser("compare", help="adjudicate matched pairs over an outcome hierarchy")
    compare_parser.add_argument("pairs", type=Path, help="pair-level CSV file")
    compare_parser.add_argument("hierarchy", type=Path, help="outcome hierarchy file")
    _add_format_argument(compare_parser)
    compare_parser.set_defaults(handler=cmd_compare)

    design_parser = subparsers.add_parser("design", help="number of matched pairs for a target power")
    target = design_parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--nb", type=float, help="anticipated net benefit")
    target.add_argument("--wr", type=float, help="anticipated win ratio")
    target.add_argument("--pw", type=float, help="anticipated win probability")
    design_parser.add_argument("--pwl", type=float, help="anticipated proportion of untied pairs")
    design_parser.add_argument("--pl", type=float, help="anticipated loss probability")
    design_parser.add_argument("--power", type=float, default=0.8, help="target power (default: 0.8)")
    _add_alpha_arguments(design_parser)
    design_parser.add_argument("--format", choices=["text", "json"], default=None, help="output format")
    design_parser.set_defaults(handler=cmd_design)

    simulate_parser = subparsers.add_parser("simulate", help="run a simulation grid")
    simulate_parser.add_argument("grid", type=Path, help="simulation grid file")
    simulate_parser.add_argument("--replicates", type=int, help="override the replicate count of every study")
    simulate_parser.add_argument("--seed", type=int, help="override the master seed of every study")
    simulate_parser.add_argument("--out", type=Path, help="directory to write <grid>.csv and <grid>.json to")
    simulate_parser.add_argument("--workers", type=int, default=1, help="number of worker threads")
    simulate_parser.add_argument("--format", choices=["csv", "json", "both"], default=None, help="report format")
    simulate_parser.set_defaults(handler=cmd_simulate)

    return parser


def _configure_logging(verbose: int) -> None:
    if not verbose:
        return

    level = logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    for name in list(logging.root.manager.loggerDict):
        if name.startswith("dissect.winratio"):
            logging.getLogger(name).setLevel(level)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    _configure_logging(args.verbose)

    try:
        output = args.handler(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"winratio {args.command}: error: {e}", file=sys.stderr)
        return 2
    except Error as e:
        print(f"winratio {args.command}: error: {e}", file=sys.stderr)
        return 2
    except Exception:
        log.exception("Internal error")
        print(f"winratio {args.command}: internal error, rerun with -v for details", file=sys.stderr)
        return 1

    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
