"""Report assembly and emission.

Holds the per-instance evaluation bundle, a 17-significant-digit JSON
writer shared by the CLI and the HTTP service (both emit byte-identical
payloads), CSV tables, and matplotlib figure rendering for the report
paths that want a picture next to the delimited output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidParams
from .geometry import Instance, consecutive_arcs, facing_profile
from .mechanisms import mixture, pcd, random_dictator
from .optimum import cost_vector, large_arc_rule, median_optimal_agent
from .ratios import TwoPairSweepResult, gamma, two_pair_surface
from .search import CurvePoint

MECHANISM_NAMES = ("pcd", "rd", "mix")

CURVE_COLUMNS = ("n", "gamma_numeric", "gamma_hypothesis", "rd_ratio", "mix_bound")
TWO_PAIR_COLUMNS = ("case", "gamma", "s", "t")


@dataclass(frozen=True)
class EvaluationReport:
    """Everything the boundary layers print for one instance.

    Agent indices are 1-based here; the library itself is 0-based.
    """

    arcs: tuple[float, ...]
    facing: tuple[float, ...]
    costs: tuple[float, ...]
    sc: float
    opt_index: int
    opt_cost: float
    gamma: float
    median_optimal_index: int
    large_arc_index: int | None


def evaluate(inst: Instance, mechanism: str = "pcd", lam: float = 1.0) -> EvaluationReport:
    """Full evaluation pipeline for one instance under the named rule
    (facing-arc rule, uniform dictator, or their lam-weighted mixture)."""
    if mechanism not in MECHANISM_NAMES:
        raise InvalidParams(f"unknown mechanism {mechanism!r}, pick one of {MECHANISM_NAMES}")
    if mechanism == "pcd":
        mech = pcd
    elif mechanism == "rd":
        mech = random_dictator
    else:
        def mech(i: Instance):
            return mixture(i, lam)

    rep = gamma(inst, mech)
    big = large_arc_rule(inst)
    return EvaluationReport(
        arcs=consecutive_arcs(inst),
        facing=facing_profile(inst).p,
        costs=cost_vector(inst),
        sc=rep.sc,
        opt_index=rep.opt.agent_index + 1,
        opt_cost=rep.opt.cost,
        gamma=rep.gamma,
        median_optimal_index=median_optimal_agent(inst) + 1,
        large_arc_index=None if big is None else big + 1,
    )


def report_payload(report: EvaluationReport) -> dict:
    # field order is load-bearing: payloads are compared byte-for-byte
    # across emitters
    return {
        "arcs": list(report.arcs),
        "facing": list(report.facing),
        "costs": list(report.costs),
        "sc": report.sc,
        "opt_index": report.opt_index,
        "opt_cost": report.opt_cost,
        "gamma": report.gamma,
        "median_optimal_index": report.median_optimal_index,
        "large_arc_index": report.large_arc_index,
    }


def format_float(v: float) -> str:
    if not math.isfinite(v):
        raise InvalidParams(f"cannot serialize non-finite number {v!r}")
    return format(v, ".17g")


def render_json(value) -> str:
    """Compact JSON with floats at 17 significant digits and insertion
    order preserved, so parsing a payload reproduces every float bit for
    bit no matter which component emitted it."""
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        parts = []
        for k, v in value.items():
            if not isinstance(k, str):
                raise InvalidParams(f"object keys must be strings, got {k!r}")
            parts.append(f"{json.dumps(k)}:{render_json(v)}")
        return "{" + ",".join(parts) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(render_json(v) for v in value) + "]"
    raise InvalidParams(f"cannot serialize values of type {type(value).__name__}")


def _text_float(v: float) -> str:
    return format(v, ".10g")


def render_report_text(report: EvaluationReport) -> str:
    lines = [
        "arcs:                 " + " ".join(_text_float(v) for v in report.arcs),
        "facing probabilities: " + " ".join(_text_float(v) for v in report.facing),
        "agent costs:          " + " ".join(_text_float(v) for v in report.costs),
        f"expected social cost: {_text_float(report.sc)}",
        f"optimum:              agent {report.opt_index} cost {_text_float(report.opt_cost)}",
        f"ratio:                {_text_float(report.gamma)}",
        f"median-optimal agent: {report.median_optimal_index}",
        "large-arc agent:      "
        + ("none" if report.large_arc_index is None else str(report.large_arc_index)),
    ]
    return "\n".join(lines) + "\n"


def curve_rows(points: Sequence[CurvePoint]) -> list[dict]:
    return [
        {
            "n": p.n,
            "gamma_numeric": p.gamma_numeric,
            "gamma_hypothesis": p.gamma_hypothesis,
            "rd_ratio": p.rd_ratio,
            "mix_bound": p.mix_bound,
        }
        for p in points
    ]


def curve_csv(points: Sequence[CurvePoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_COLUMNS)
    for p in points:
        writer.writerow(
            [
                p.n,
                format_float(p.gamma_numeric),
                "" if p.gamma_hypothesis is None else format_float(p.gamma_hypothesis),
                format_float(p.rd_ratio),
                format_float(p.mix_bound),
            ]
        )
    return buf.getvalue()


def curve_text(points: Sequence[CurvePoint]) -> str:
    lines = ["  n  gamma_numeric  gamma_hypothesis  rd_ratio  mix_bound"]
    for p in points:
        hyp = "-" if p.gamma_hypothesis is None else f"{p.gamma_hypothesis:.7f}"
        lines.append(
            f"{p.n:>3}  {p.gamma_numeric:<13.7f}  {hyp:<16}  {p.rd_ratio:<8.5f}  {p.mix_bound:.2f}"
        )
    return "\n".join(lines) + "\n"


def two_pair_payload(sweep: TwoPairSweepResult) -> dict:
    return {
        "best": {
            "case": sweep.best_case.value,
            "gamma": sweep.best_gamma,
            "s": sweep.best_s,
            "t": sweep.best_t,
        },
        "cases": [
            {"case": case.value, "gamma": m.gamma, "s": m.s, "t": m.t}
            for case, m in sweep.per_case.items()
        ],
    }


def two_pair_csv(sweep: TwoPairSweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TWO_PAIR_COLUMNS)
    for case, m in sweep.per_case.items():
        writer.writerow([case.value, format_float(m.gamma), format_float(m.s), format_float(m.t)])
    return buf.getvalue()


def two_pair_text(sweep: TwoPairSweepResult) -> str:
    lines = ["case     gamma          s          t"]
    for case, m in sweep.per_case.items():
        lines.append(f"{case.value:<8} {m.gamma:<13.9f}  {m.s:<9.6f}  {m.t:.6f}")
    lines.append(
        f"best: {sweep.best_case.value} with gamma {sweep.best_gamma:.9f} "
        f"at (s, t) = ({sweep.best_s:.6f}, {sweep.best_t:.6f})"
    )
    return "\n".join(lines) + "\n"


def search_payload(result) -> dict:
    return {
        "method": result.method.value,
        "best_gamma": result.best_gamma,
        "best_profile": list(result.best_profile.p),
        "evaluations": result.evaluations,
    }


def search_text(result) -> str:
    profile = " ".join(_text_float(v) for v in result.best_profile.p)
    return (
        f"method:      {result.method.value}\n"
        f"best ratio:  {_text_float(result.best_gamma)}\n"
        f"profile:     {profile}\n"
        f"evaluations: {result.evaluations}\n"
    )


def curve_figure(points: Sequence[CurvePoint], path: str) -> None:
    """Chart the numeric worst-case curve against its closed forms."""
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    ns = [p.n for p in points]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    hyp = [(p.n, p.gamma_hypothesis) for p in points if p.gamma_hypothesis is not None]
    if hyp:
        ax.plot(*zip(*hyp), color="tab:blue", label="closed-form curve")
    ax.plot(ns, [p.gamma_numeric for p in points], "o", ms=4, color="tab:red",
            label="numeric lower bound")
    ax.plot(ns, [p.rd_ratio for p in points], color="tab:green", ls=":",
            label="uniform dictator 2-2/n")
    ax.axhline(points[0].mix_bound, color="tab:gray", ls="--", lw=1,
               label=f"mixture bound {points[0].mix_bound}")
    ax.set_xlabel("agents")
    ax.set_ylabel("worst ratio")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def two_pair_figure(sweep: TwoPairSweepResult, path: str, step: float = 2e-3) -> None:
    """Heatmap of the best feasible case formula over the (s, t) triangle
    with the sweep maximum marked."""
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    s, t, vals = two_pair_surface(step)
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    mesh = ax.pcolormesh(s, t, vals, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="ratio")
    ax.plot([sweep.best_s], [sweep.best_t], "r*", ms=12)
    ax.set_xlabel("pair gap s")
    ax.set_ylabel("pair gap t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
