"""Report assembly, JSON emission, tables, and figures."""

import json
import math

import pytest

from circlemech.errors import InvalidParams
from circlemech.geometry import canonicalize, instance_from_two_pair
from circlemech.ratios import ALPHA, two_pair_sweep
from circlemech.reporting import (
    CURVE_COLUMNS,
    TWO_PAIR_COLUMNS,
    curve_csv,
    curve_figure,
    curve_rows,
    curve_text,
    evaluate,
    format_float,
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
from circlemech.search import CurvePoint, grid_search

S_WORST = (2.0 - math.sqrt(2.0)) / 2.0
WORST = instance_from_two_pair(S_WORST, 0.5)
EQUI = canonicalize([0.0, 0.2, 0.4, 0.6, 0.8])


class TestRenderJson:
    def test_float_keeps_seventeen_digits(self):
        assert render_json(0.1) == "0.10000000000000001"
        assert render_json(ALPHA) == "1.3431457505076194"

    def test_float_round_trips_exactly(self):
        for v in (0.1, ALPHA, 1.0 / 3.0, 2.0 ** -40, 123456.789):
            assert json.loads(render_json(v)) == v

    def test_scalars(self):
        assert render_json(None) == "null"
        assert render_json(True) == "true"
        assert render_json(False) == "false"
        assert render_json(7) == "7"
        assert render_json("a\"b") == '"a\\"b"'

    def test_containers_preserve_order(self):
        payload = {"b": [1, 2.5], "a": {"x": None}}
        assert render_json(payload) == '{"b":[1,2.5],"a":{"x":null}}'

    def test_rejects_nan_and_inf(self):
        with pytest.raises(InvalidParams):
            render_json(float("nan"))
        with pytest.raises(InvalidParams):
            render_json([float("inf")])

    def test_rejects_non_string_keys(self):
        with pytest.raises(InvalidParams):
            render_json({1: "x"})

    def test_rejects_unknown_types(self):
        with pytest.raises(InvalidParams):
            render_json({"x": object()})

    def test_format_float_is_plain_digits(self):
        assert format_float(1.2) == "1.2"
        assert format_float(0.5) == "0.5"


class TestEvaluate:
    def test_worst_instance_report(self):
        rep = evaluate(WORST)
        assert rep.gamma == pytest.approx(ALPHA, abs=1e-12)
        assert rep.sc == pytest.approx((7.0 * math.sqrt(2.0) - 8.0) / 2.0, abs=1e-12)
        assert rep.opt_cost == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-12)
        assert rep.opt_index == 1
        assert rep.median_optimal_index == 1
        assert rep.large_arc_index == 1
        assert len(rep.arcs) == len(rep.facing) == len(rep.costs) == 5
        assert math.fsum(rep.arcs) == pytest.approx(1.0, abs=1e-12)
        assert math.fsum(rep.facing) == pytest.approx(1.0, abs=1e-12)

    def test_equidistant_has_no_large_arc(self):
        rep = evaluate(EQUI)
        assert rep.large_arc_index is None
        assert rep.gamma == pytest.approx(1.0, abs=1e-12)
        assert rep.sc == pytest.approx(1.2, abs=1e-12)

    def test_random_dictator_on_worst(self):
        rep = evaluate(WORST, "rd")
        assert rep.gamma == pytest.approx((2.0 * math.sqrt(2.0) + 4.0) / 5.0, abs=1e-12)

    def test_mixture_interpolates(self):
        lo = evaluate(WORST, "mix", 0.0).sc
        hi = evaluate(WORST, "mix", 1.0).sc
        mid = evaluate(WORST, "mix", 0.5).sc
        assert mid == pytest.approx(0.5 * (lo + hi), abs=1e-12)
        assert hi == pytest.approx(evaluate(WORST).sc, abs=1e-15)

    def test_unknown_mechanism(self):
        with pytest.raises(InvalidParams):
            evaluate(WORST, "plurality")

    def test_payload_field_order(self):
        payload = report_payload(evaluate(WORST))
        assert list(payload) == [
            "arcs",
            "facing",
            "costs",
            "sc",
            "opt_index",
            "opt_cost",
            "gamma",
            "median_optimal_index",
            "large_arc_index",
        ]

    def test_payload_json_parses(self):
        payload = report_payload(evaluate(EQUI))
        parsed = json.loads(render_json(payload))
        assert parsed["large_arc_index"] is None
        assert parsed["gamma"] == payload["gamma"]

    def test_text_report_lines(self):
        text = render_report_text(evaluate(WORST))
        assert "ratio:                1.343145751" in text
        assert "optimum:              agent 1" in text
        assert "large-arc agent:      1" in text
        assert text.endswith("\n")

    def test_text_report_no_large_arc(self):
        assert "large-arc agent:      none" in render_report_text(evaluate(EQUI))


class TestCurveTables:
    points = (
        CurvePoint(n=3, gamma_numeric=1.25, gamma_hypothesis=None,
                   rd_ratio=2.0 - 2.0 / 3.0, mix_bound=1.75),
        CurvePoint(n=5, gamma_numeric=ALPHA, gamma_hypothesis=ALPHA,
                   rd_ratio=2.0 - 2.0 / 5.0, mix_bound=1.75),
    )

    def test_csv_header_and_empty_hypothesis(self):
        out = curve_csv(self.points)
        lines = out.splitlines()
        assert lines[0] == ",".join(CURVE_COLUMNS)
        assert lines[1].split(",")[2] == ""
        assert lines[2].split(",")[2] == format_float(ALPHA)
        assert len(lines) == 3

    def test_rows_round_trip(self):
        rows = curve_rows(self.points)
        assert rows[0]["gamma_hypothesis"] is None
        assert rows[1]["n"] == 5
        json.loads(render_json(rows))

    def test_text_table(self):
        text = curve_text(self.points)
        assert text.splitlines()[0].split() == list(CURVE_COLUMNS)
        assert " - " in text.splitlines()[1] or text.splitlines()[1].rstrip().endswith("1.75")


class TestTwoPairTables:
    sweep = two_pair_sweep(5e-3)

    def test_csv_shape(self):
        lines = two_pair_csv(self.sweep).splitlines()
        assert lines[0] == ",".join(TWO_PAIR_COLUMNS)
        assert len(lines) == 1 + len(self.sweep.per_case)

    def test_payload_best_matches(self):
        payload = two_pair_payload(self.sweep)
        assert payload["best"]["gamma"] == self.sweep.best_gamma
        assert {row["case"] for row in payload["cases"]} >= {"A1", "B1"}
        json.loads(render_json(payload))

    def test_text_mentions_best(self):
        assert "best: B1" in two_pair_text(self.sweep)


class TestSearchRendering:
    result = grid_search(3, 0.25)

    def test_payload(self):
        payload = search_payload(self.result)
        assert payload["method"] == "grid"
        assert payload["evaluations"] == self.result.evaluations
        assert len(payload["best_profile"]) == 3
        json.loads(render_json(payload))

    def test_text(self):
        text = search_text(self.result)
        assert "method:      grid" in text
        assert "evaluations:" in text


class TestFigures:
    def test_curve_figure_writes_png(self, tmp_path):
        path = tmp_path / "curve.png"
        curve_figure(TestCurveTables.points, str(path))
        assert path.exists() and path.stat().st_size > 1000

    def test_two_pair_figure_writes_png(self, tmp_path):
        path = tmp_path / "cases.png"
        two_pair_figure(TestTwoPairTables.sweep, str(path), step=5e-3)
        assert path.exists() and path.stat().st_size > 1000
