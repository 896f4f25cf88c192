"""Command-line surface.

Exit codes: 0 condition holds / success, 1 condition fails, 2 invalid metric,
3 usage or I/O error.
"""
from __future__ import annotations

import argparse
import math
import sys
import time

from .certify import CurvatureQuery, certify, default_threads, defect_profile
from .counterexamples import check_counterexample
from .generators import parse_generator_spec, sample_space
from .hyperbolicity import delta_four_point, relaxed_npc_bound_check
from .metricspace import (
    DisconnectedGraphError,
    InvalidParameterError,
    MetricValidationError,
    format_distance_matrix,
    load_space,
)
from .report import base_report, dumps_report, verdict_fields, witness_entry

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INVALID_METRIC = 2
EXIT_USAGE = 3


def _parse_float(text: str) -> float:
    return float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvcomp",
        description="Circumradius-comparison curvature conditions on finite metric spaces.",
    )
    parser.add_argument("--threads", type=int, default=None, help="worker thread cap (default: CURV_THREADS or 1)")
    # accepted before or after the subcommand; SUPPRESS keeps a missing
    # trailing flag from clobbering a leading one
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=lambda **kw: argparse.ArgumentParser(parents=[common], **kw))

    def add_input(p):
        p.add_argument("path", help="distance matrix (.csv) or edge list (.tsv/.edges)")
        p.add_argument("--format", choices=["matrix", "edges"], default=None)

    p = sub.add_parser("validate", help="validate a metric input file")
    add_input(p)
    p.add_argument("--pseudo-ok", action="store_true", help="admit zero distances between distinct points")

    p = sub.add_parser("certify", help="test Curv <= kappa or Curv >= kappa")
    add_input(p)
    p.add_argument("--kappa", type=_parse_float, default=0.0)
    p.add_argument("--direction", choices=["upper", "lower"], default="upper")
    p.add_argument("--beta", type=_parse_float, default=0.0)
    p.add_argument("--epsilon", type=_parse_float, default=0.0)
    p.add_argument("--degenerate", action="store_true", help="include degenerate pair-triples")
    p.add_argument("--max-perimeter", type=_parse_float, default=None)
    p.add_argument("--json", dest="json_out", default=None, help="write a JSON report here")

    p = sub.add_parser("defect", help="defect profile with scale curve and histogram")
    add_input(p)
    p.add_argument("--kappa", type=_parse_float, default=0.0)
    p.add_argument("--beta-grid", default="", help="comma-separated ascending beta values")
    p.add_argument("--degenerate", action="store_true")
    p.add_argument("--json", dest="json_out", default=None)
    p.add_argument("--csv", dest="csv_prefix", default=None, help="write <prefix>_beta_curve.csv and <prefix>_histogram.csv")

    p = sub.add_parser("hyperbolicity", help="four-point delta and the relaxed-defect comparison")
    add_input(p)
    p.add_argument("--allowance", type=_parse_float, default=0.0, help="discretization allowance h (e.g. max edge length)")
    p.add_argument("--json", dest="json_out", default=None)

    p = sub.add_parser("sample", help="generate a synthetic space from a spec string")
    p.add_argument("spec", help="e.g. 'sphere:kappa=1,n=40,seed=7'")
    p.add_argument("--out", required=True, help="output distance-matrix file")
    p.add_argument("--json", dest="json_out", default=None)

    p = sub.add_parser("counterexample", help="reproduce the l_p upper-bound counterexample")
    p.add_argument("--p", type=_parse_float, required=True)
    p.add_argument("--json", dest="json_out", default=None)
    return parser


def _query_echo(query: CurvatureQuery) -> dict:
    return {
        "kappa": query.kappa,
        "direction": query.direction,
        "beta": query.beta,
        "epsilon": query.epsilon,
        "degenerate": query.degenerate_pairs,
        "max_perimeter": query.max_perimeter,
    }


def _write_json(path: str | None, report: dict, started: float) -> None:
    report["timing_ms"] = (time.perf_counter() - started) * 1000.0
    if path:
        with open(path, "w") as fh:
            fh.write(dumps_report(report))


def _load(args):
    return load_space(args.path, fmt=args.format)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for bad usage; keep 0, map the rest
        # onto the usage exit code of this tool's contract
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    started = time.perf_counter()
    threads = args.threads if args.threads is not None else default_threads()
    try:
        return _dispatch(args, threads, started)
    except MetricValidationError as exc:
        for violation in exc.violations:
            print(f"violation: {violation}", file=sys.stderr)
        return EXIT_INVALID_METRIC
    except (OSError, ValueError, DisconnectedGraphError, InvalidParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args, threads: int, started: float) -> int:
    if args.command == "validate":
        load_space(args.path, fmt=args.format, pseudo_ok=args.pseudo_ok)
        print("valid")
        return EXIT_OK

    if args.command == "certify":
        space = _load(args)
        query = CurvatureQuery(
            kappa=args.kappa,
            direction=args.direction,
            beta=args.beta,
            epsilon=args.epsilon,
            degenerate_pairs=args.degenerate,
            max_perimeter=args.max_perimeter,
        )
        verdict = certify(space, query, threads=threads)
        report = base_report(space, _query_echo(query))
        report.update(verdict_fields(space, verdict))
        _write_json(args.json_out, report, started)
        if verdict.holds:
            print(f"holds (epsilon_needed={verdict.epsilon_needed:.6g}, skipped={verdict.skipped})")
            return EXIT_OK
        w = verdict.witness
        labels = ",".join(space.label(i) for i in w.triple.as_tuple()) if w else ""
        print(f"fails (epsilon_needed={verdict.epsilon_needed:.6g}, witness={labels})")
        return EXIT_FAILS

    if args.command == "defect":
        space = _load(args)
        grid = [float(x) for x in args.beta_grid.split(",") if x.strip()] if args.beta_grid else []
        profile = defect_profile(
            space,
            kappa=args.kappa,
            beta_grid=grid,
            degenerate_pairs=args.degenerate,
            threads=threads,
        )
        report = base_report(space, {"kappa": args.kappa, "beta_grid": grid, "degenerate": args.degenerate})
        report["epsilon_star_upper"] = profile.epsilon_star_upper
        report["epsilon_star_lower"] = profile.epsilon_star_lower
        report["skipped"] = profile.skipped
        report["beta_curve"] = [list(entry) for entry in profile.beta_curve]
        report["witnesses"] = [
            witness_entry(space, td) for td in (profile.worst_upper, profile.worst_lower) if td
        ]
        _write_json(args.json_out, report, started)
        if args.csv_prefix:
            with open(f"{args.csv_prefix}_beta_curve.csv", "w") as fh:
                fh.write("beta,epsilon_star\n")
                for beta, eps in profile.beta_curve:
                    fh.write(f"{beta:.17g},{eps:.17g}\n")
            with open(f"{args.csv_prefix}_histogram.csv", "w") as fh:
                fh.write("bin_left,bin_right,count\n")
                edges = profile.histogram.bin_edges
                for left, right, count in zip(edges, edges[1:], profile.histogram.counts):
                    fh.write(f"{left:.17g},{right:.17g},{count}\n")
        print(
            f"epsilon_star_upper={profile.epsilon_star_upper:.6g} "
            f"epsilon_star_lower={profile.epsilon_star_lower:.6g} skipped={profile.skipped}"
        )
        return EXIT_OK

    if args.command == "hyperbolicity":
        space = _load(args)
        result = delta_four_point(space, threads=threads)
        bound = relaxed_npc_bound_check(space, args.allowance, threads=threads)
        report = base_report(space, {"allowance": args.allowance})
        report["delta"] = result.delta
        report["epsilon_star_upper"] = bound.epsilon_star_upper
        report["verdict"] = {
            "two_delta_plus_h": 2.0 * bound.delta + bound.discretization,
            "slack": bound.slack,
        }
        if result.witness is not None:
            report["witnesses"] = [
                {"quadruple": list(result.witness), "labels": [space.label(i) for i in result.witness]}
            ]
        _write_json(args.json_out, report, started)
        print(f"delta={result.delta:.6g} epsilon_star_upper={bound.epsilon_star_upper:.6g} slack={bound.slack:.6g}")
        return EXIT_OK

    if args.command == "sample":
        spec = parse_generator_spec(args.spec)
        space = sample_space(spec)
        with open(args.out, "w") as fh:
            fh.write(format_distance_matrix(space.dist))
        report = base_report(space, {"spec": args.spec})
        _write_json(args.json_out, report, started)
        print(f"wrote {space.n}x{space.n} matrix to {args.out}")
        return EXIT_OK

    if args.command == "counterexample":
        result = check_counterexample(args.p)
        expects_violation = not (args.p == 2.0 or math.isinf(args.p))
        reproduced = (
            result.margin >= 1e-3 if expects_violation else abs(result.margin) <= 1e-9
        )
        report = base_report(None, {"p": args.p})
        report["verdict"] = {
            "r_space": result.space_result.radius,
            "r_model": result.comparison_radius,
            "margin": result.margin,
            "statement": "Curv <= 0 fails" if result.margin > 1e-9 else "no violation",
            "reproduced": reproduced,
        }
        report["witnesses"] = [
            {"labels": ["A'", "B", "C"], "vertices": [list(v) for v in result.vertices]}
        ]
        _write_json(args.json_out, report, started)
        print(
            f"p={args.p}: r_space={result.space_result.radius:.9g} "
            f"r_model={result.comparison_radius:.9g} margin={result.margin:.3e}"
        )
        return EXIT_OK if reproduced else EXIT_FAILS

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
