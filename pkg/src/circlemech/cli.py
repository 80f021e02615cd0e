"""Command-line front end.

Exit codes: 0 success, 2 usage or validation failure, 3 property
violation from a verify suite, 4 exhausted evaluation budget.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from pathlib import Path

from .errors import BudgetExceeded, CircleMechError, InvalidParams
from .geometry import canonicalize, wrap
from .ratios import two_pair_sweep
from .reporting import (
    curve_csv,
    curve_figure,
    curve_rows,
    curve_text,
    evaluate,
    render_json,
    render_report_text,
    report_payload,
    search_payload,
    search_text,
    two_pair_csv,
    two_pair_figure,
    two_pair_payload,
    two_pair_text,
)
from .search import grid_search, hybrid_search, hypothesis_curve_dataset, random_search, refine
from .verify import SUITE_NAMES, run_suite


def _parse_positions(raw: str) -> tuple[float, ...]:
    values = []
    for token in raw.split(","):
        token = token.strip()
        try:
            v = float(token)
        except ValueError:
            raise InvalidParams(f"cannot parse position token {token!r}") from None
        if not math.isfinite(v):
            raise InvalidParams(f"position token {token!r} is not finite")
        values.append(v)
    if len(values) % 2 == 0:
        raise InvalidParams(f"agent count must be odd, got {len(values)} positions")
    moved = [v for v in values if not 0.0 <= v < 1.0]
    if moved:
        print(
            f"warning: normalized {len(moved)} position(s) into [0, 1) by wrapping mod 1",
            file=sys.stderr,
        )
        values = [wrap(v) if not 0.0 <= v < 1.0 else v for v in values]
    return tuple(values)


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _figure_path(output: str | None, default_name: str) -> str:
    if output is None:
        return default_name
    return str(Path(output).with_suffix(".png"))


def cmd_eval(args) -> int:
    inst = canonicalize(_parse_positions(args.positions))
    report = evaluate(inst, args.mechanism, args.lam)
    if args.format == "json":
        _write(render_json(report_payload(report)) + "\n", args.output)
    else:
        _write(render_report_text(report), args.output)
    return 0


def cmd_verify(args) -> int:
    result = run_suite(args.suite, args.samples, args.seed, args.eps)
    verdict = "PASS" if result.passed else "FAIL"
    if args.format == "json":
        payload = {
            "suite": result.suite,
            "checked": result.checked,
            "passed": result.passed,
            "violations": list(result.violations),
        }
        _write(render_json(payload) + "\n", args.output)
    else:
        lines = [f"suite {result.suite}: checked {result.checked}, "
                 f"{len(result.violations)} violation(s) -> {verdict}"]
        lines.extend(f"  counterexample: {v}" for v in result.violations)
        _write("\n".join(lines) + "\n", args.output)
    return 0 if result.passed else 3


def cmd_search(args) -> int:
    if args.grid is None and args.samples is None:
        raise InvalidParams("search needs --grid, --samples, or both")
    if args.samples is not None and args.seed is None:
        raise InvalidParams("--seed is required whenever --samples draws random profiles")
    if args.grid is not None and args.samples is not None:
        result = hybrid_search(args.n, args.grid, args.samples, args.seed, top_k=args.top_k)
    elif args.grid is not None:
        result = grid_search(args.n, args.grid)
        if args.refine:
            polished = refine(result.best_profile, step0=args.grid)
            total = result.evaluations + polished.evaluations
            best = polished if polished.best_gamma >= result.best_gamma else result
            result = dataclasses.replace(best, evaluations=total)
    else:
        result = random_search(args.n, args.samples, args.seed)
        if args.refine:
            polished = refine(result.best_profile)
            total = result.evaluations + polished.evaluations
            best = polished if polished.best_gamma >= result.best_gamma else result
            result = dataclasses.replace(best, evaluations=total)
    if args.format == "json":
        _write(render_json(search_payload(result)) + "\n", args.output)
    else:
        _write(search_text(result), args.output)
    return 0


def cmd_two_pair(args) -> int:
    sweep = two_pair_sweep(args.step)
    if args.format == "json":
        _write(render_json(two_pair_payload(sweep)) + "\n", args.output)
    elif args.format == "csv":
        _write(two_pair_csv(sweep), args.output)
    else:
        _write(two_pair_text(sweep), args.output)
    if args.plot:
        two_pair_figure(sweep, _figure_path(args.output, "two_pair_cases.png"))
    return 0


def cmd_hypothesis(args) -> int:
    points = hypothesis_curve_dataset(args.n_max, args.samples_per_n, args.seed)
    if args.format == "json":
        _write(render_json(curve_rows(points)) + "\n", args.output)
    elif args.format == "csv":
        _write(curve_csv(points), args.output)
    else:
        _write(curve_text(points), args.output)
    if args.plot:
        curve_figure(points, _figure_path(args.output, "hypothesis_curve.png"))
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(port=args.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlemech",
        description="Evaluate, verify, and stress the facing-arc facility "
        "location mechanism on the unit circle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one instance")
    p.add_argument("--positions", required=True,
                   help="comma-separated agent positions as fractions of the circumference")
    p.add_argument("--mechanism", choices=("pcd", "rd", "mix"), default="pcd")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="facing-arc weight when --mechanism mix (default 1)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.1,
                   help="ball radius for the eps-ball suite")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="hunt for worst-case instances")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=float, default=None, help="simplex lattice spacing")
    p.add_argument("--samples", type=int, default=None, help="random profile draws")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--refine", action="store_true", help="polish the best profile by local ascent")
    p.add_argument("--top-k", type=int, default=100,
                   help="profiles kept for refinement when both stages run")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("two-pair", help="sweep the two-pair family case maxima")
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--output")
    p.add_argument("--plot", action="store_true",
                   help="also render the case surface next to the output")
    p.set_defaults(func=cmd_two_pair)

    p = sub.add_parser("hypothesis", help="emit the worst-ratio growth table")
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.add_argument("--samples-per-n", dest="samples_per_n", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--output")
    p.add_argument("--plot", action="store_true",
                   help="also render the curve next to the output")
    p.set_defaults(func=cmd_hypothesis)

    p = sub.add_parser("serve", help="start the evaluation HTTP service")
    p.add_argument("--port", type=int, default=8080)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except CircleMechError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 0
