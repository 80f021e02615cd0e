"""Stateless JSON-over-HTTP evaluation service.

Every handler is a pure function of its request. Responses are
serialized with the shared 17-significant-digit writer, so a payload
from POST /evaluate is byte-identical to the command line's JSON output
for the same instance.

Agent indices in requests and responses are 1-based and refer to the
canonical clockwise order, the same order every response array uses.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response

from .errors import CircleMechError
from .geometry import canonicalize, wrap
from .optimum import optimum
from .ratios import ALPHA, SC_BOUND, gamma_hypothesis
from .reporting import MECHANISM_NAMES, evaluate, render_json, report_payload

HYPOTHESIS_TABLE_MAX = 101


def _json_response(payload, status: int = 200) -> Response:
    return Response(
        content=render_json(payload),
        media_type="application/json",
        status_code=status,
    )


def _error(status: int, message: str, field: str | None = None) -> Response:
    body: dict = {"error": message}
    if field is not None:
        body["field"] = field
    return _json_response(body, status)


def _parse_positions(body: dict):
    """Returns (normalized positions tuple, error response or None)."""
    if "positions" not in body:
        return None, _error(400, "missing required field", "positions")
    raw = body["positions"]
    if not isinstance(raw, list) or not raw:
        return None, _error(400, "positions must be a non-empty array", "positions")
    values = []
    for i, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            return None, _error(400, f"positions[{i}] must be a finite number", "positions")
        values.append(float(v))
    if len(values) % 2 == 0:
        return None, _error(422, f"agent count must be odd, got {len(values)}")
    return tuple(wrap(v) if not 0.0 <= v < 1.0 else v for v in values), None


def _parse_mechanism(body: dict):
    mechanism = body.get("mechanism", "pcd")
    if mechanism not in MECHANISM_NAMES:
        return None, None, _error(
            400, f"mechanism must be one of {', '.join(MECHANISM_NAMES)}", "mechanism"
        )
    lam = body.get("lambda", 1.0)
    if isinstance(lam, bool) or not isinstance(lam, (int, float)) or not math.isfinite(lam):
        return None, None, _error(400, "lambda must be a finite number", "lambda")
    if not 0.0 <= lam <= 1.0:
        return None, None, _error(400, "lambda must lie in [0, 1]", "lambda")
    return mechanism, float(lam), None


async def _json_body(request: Request):
    try:
        body = await request.json()
    except Exception:
        return None, _error(400, "request body must be JSON")
    if not isinstance(body, dict):
        return None, _error(400, "request body must be a JSON object")
    return body, None


def _constants_payload() -> dict:
    table = {
        str(n): gamma_hypothesis(n) for n in range(5, HYPOTHESIS_TABLE_MAX + 1, 2)
    }
    return {"alpha": ALPHA, "sc_bound": SC_BOUND, "hypothesis": table}


def create_app() -> FastAPI:
    app = FastAPI(title="circlemech evaluation service", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    constants = render_json(_constants_payload())

    @app.post("/evaluate")
    async def evaluate_endpoint(request: Request) -> Response:
        body, err = await _json_body(request)
        if err is not None:
            return err
        positions, err = _parse_positions(body)
        if err is not None:
            return err
        mechanism, lam, err = _parse_mechanism(body)
        if err is not None:
            return err
        try:
            report = evaluate(canonicalize(positions), mechanism, lam)
        except CircleMechError as exc:
            return _error(400, str(exc))
        return _json_response(report_payload(report))

    @app.get("/constants")
    async def constants_endpoint() -> Response:
        return Response(content=constants, media_type="application/json")

    @app.post("/dual-drag")
    async def dual_drag_endpoint(request: Request) -> Response:
        body, err = await _json_body(request)
        if err is not None:
            return err
        positions, err = _parse_positions(body)
        if err is not None:
            return err
        pair = body.get("agents")
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or any(isinstance(v, bool) or not isinstance(v, int) for v in pair)
        ):
            return _error(400, "agents must be an array of two integer indices", "agents")
        n = len(positions)
        a, b = pair
        if not (1 <= a <= n and 1 <= b <= n):
            return _error(400, f"agent indices must lie in 1..{n}", "agents")
        if a == b:
            return _error(400, "agent indices must be distinct", "agents")
        delta = body.get("displacement")
        if isinstance(delta, bool) or not isinstance(delta, (int, float)) or not math.isfinite(delta):
            return _error(400, "displacement must be a finite number", "displacement")
        if abs(delta) >= 0.5:
            return _error(400, "displacement must be smaller than half the circle", "displacement")

        inst = canonicalize(positions)
        xs = list(inst.positions)
        opt = optimum(inst)
        x_opt = xs[opt.agent_index]

        def orientation(x: float) -> float:
            # +1 where the distance to the optimum grows clockwise
            return 1.0 if (x - x_opt) % 1.0 < 0.5 else -1.0

        i, j = a - 1, b - 1
        d_i = float(delta)
        d_j = -d_i * orientation(xs[i]) * orientation(xs[j])
        moved = list(xs)
        moved[i] = wrap(moved[i] + d_i)
        moved[j] = wrap(moved[j] + d_j)

        order = sorted(range(n), key=lambda k: (moved[k], k))
        start = order.index(0)
        if order[start:] + order[:start] != list(range(n)):
            return _error(400, "displacement crosses a neighboring agent")

        try:
            after = canonicalize(moved)
            report = evaluate(after)
        except CircleMechError as exc:
            return _error(400, str(exc))
        preserved = (
            report.opt_index == order.index(opt.agent_index) + 1
            and abs(report.opt_cost - opt.cost) <= 1e-12
        )
        payload = report_payload(report)
        payload["preserved_opt"] = preserved
        payload["positions"] = list(after.positions)
        return _json_response(payload)

    return app


def serve(port: int = 8080) -> None:
    """Blocks serving the app on localhost until interrupted."""
    import uvicorn

    uvicorn.run(create_app(), host="127.0.0.1", port=port, log_level="warning")
