"""JSON-over-HTTP facade for the inference engine.

One model per service instance, loaded and validated at startup and
immutable afterwards; every response is a pure function of (model,
request body). Endpoints:

    GET  /api/model[?cpts=true]      model structure and provenance summary
    POST /api/infer                  {"evidence": {node: state}} -> all posteriors
    GET  /api/scenarios              preset scenario list
    POST /api/scenarios/{id}/run     run one preset
    POST /api/sweep                  {"target": {...}, "axes": [...], "fixed": {...}}
    GET  /healthz                    liveness + model hash

Errors are JSON {"error": ..., "detail": ...} with conventional codes:
400 bad reference or malformed body, 404 unknown scenario, 413 oversized
body, 422 impossible evidence or oversized sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .inference import DEFAULT_STATE_SPACE_CAP, ImpossibleEvidenceError
from .model_io import ModelDocument, Scenario, load_model, model_hash
from .network import EvidenceError, Network, Node
from .scenarios import (
    ENGINE_ELIMINATION,
    PosteriorReport,
    SweepTable,
    export_table,
    run_scenario,
    sweep,
)

MAX_BODY_BYTES = 1_000_000
MAX_SWEEP_CELLS = 10_000


@dataclass
class ServiceConfig:
    model_path: str | Path
    host: str = "127.0.0.1"
    port: int = 8000
    static_dir: str | Path | None = None
    engine: str = ENGINE_ELIMINATION
    enum_cap: int = DEFAULT_STATE_SPACE_CAP


class ApiError(Exception):
    def __init__(self, status: int, error: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.error = error
        self.detail = detail


def _node_group(net: Network, node: Node, has_children: set[str]) -> str:
    if node.id not in has_children:
        return "outcome"
    if not node.parents:
        return "root" if node.states == ["yes", "no"] else "context"
    return "intermediate"


def _model_payload(net: Network, include_cpts: bool) -> dict:
    has_children = {p for n in net.nodes for p in n.parents}
    nodes = []
    for n in net.nodes:
        tags = n.cpt.provenance
        entry = {
            "id": n.id,
            "label": n.label,
            "states": list(n.states),
            "parents": list(n.parents),
            "group": _node_group(net, n, has_children),
            "provenance": {
                "paper": sum(1 for t in tags if t == "paper"),
                "reconstructed": sum(1 for t in tags if t == "reconstructed"),
            },
        }
        if include_cpts:
            entry["cpt"] = {
                "columns": [list(c) for c in n.cpt.columns],
                "provenance": list(tags),
            }
        nodes.append(entry)
    return {"name": net.name, "model_hash": model_hash(net), "nodes": nodes}


def report_payload(report: PosteriorReport) -> dict:
    return {
        "scenario_id": report.scenario_id,
        "evidence": report.evidence,
        "posteriors": {d.node: d.probabilities for d in report.distributions},
        "model_name": report.model_name,
        "model_hash": report.model_hash,
        "engine": report.engine,
    }


def sweep_payload(table: SweepTable) -> dict:
    return {
        "target": {"node": table.target_node, "state": table.target_state},
        "axes": [{"node": n, "states": s} for n, s in table.axes],
        "fixed": table.fixed,
        "cells": [
            {"assignment": c.assignment, "probability": c.probability, "error": c.error}
            for c in table.cells
        ],
        "model_name": table.model_name,
        "model_hash": table.model_hash,
    }


async def _read_json_body(request: Request) -> dict:
    length = request.headers.get("content-length")
    if length is not None and int(length) > MAX_BODY_BYTES:
        raise ApiError(413, "body_too_large", f"request body exceeds {MAX_BODY_BYTES} bytes")
    body = await request.body()
    if len(body) > MAX_BODY_BYTES:
        raise ApiError(413, "body_too_large", f"request body exceeds {MAX_BODY_BYTES} bytes")
    if not body:
        return {}
    import json

    try:
        parsed = json.loads(body)
    except json.JSONDecodeError as exc:
        raise ApiError(400, "malformed_body", f"body is not valid JSON: {exc.msg}")
    if not isinstance(parsed, dict):
        raise ApiError(400, "malformed_body", "body must be a JSON object")
    return parsed


def _evidence_from(raw: object) -> dict[str, str]:
    if raw is None:
        return {}
    if not isinstance(raw, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in raw.items()
    ):
        raise ApiError(400, "malformed_body", "'evidence' must map node ids to state names")
    return dict(raw)


def create_app(config: ServiceConfig) -> FastAPI:
    """Build the application. Fails fast if the model file is missing or
    does not validate."""
    path = Path(config.model_path)
    doc: ModelDocument = load_model(path.read_text(encoding="utf-8"))
    net = doc.network
    net_hash = model_hash(net)
    scenarios: dict[str, Scenario] = {s.id: s for s in doc.scenarios}

    app = FastAPI(title="roadrisk service", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def handle_api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status,
                            content={"error": exc.error, "detail": exc.detail})

    @app.get("/healthz")
    async def healthz() -> dict:
        return {"status": "ok", "model_name": net.name, "model_hash": net_hash}

    @app.get("/api/model")
    async def get_model(cpts: bool = False) -> dict:
        return _model_payload(net, include_cpts=cpts)

    @app.get("/api/scenarios")
    async def get_scenarios() -> dict:
        return {
            "scenarios": [
                {"id": s.id, "label": s.label, "evidence": s.evidence, "targets": s.targets}
                for s in scenarios.values()
            ]
        }

    def _run(scenario: Scenario) -> PosteriorReport:
        try:
            return run_scenario(net, scenario, engine=config.engine, cap=config.enum_cap)
        except ImpossibleEvidenceError as exc:
            raise ApiError(422, "impossible_evidence", str(exc))
        except EvidenceError as exc:
            raise ApiError(400, "unknown_reference", str(exc))

    @app.post("/api/infer")
    async def infer(request: Request) -> dict:
        body = await _read_json_body(request)
        unknown = set(body) - {"evidence"}
        if unknown:
            raise ApiError(400, "malformed_body",
                           f"unknown keys in body: {', '.join(sorted(unknown))}")
        evidence = _evidence_from(body.get("evidence"))
        report = _run(Scenario("adhoc", "ad hoc query", evidence, []))
        return report_payload(report)

    @app.post("/api/scenarios/{scenario_id}/run")
    async def run_preset(scenario_id: str) -> dict:
        scenario = scenarios.get(scenario_id)
        if scenario is None:
            raise ApiError(404, "unknown_scenario", f"no scenario '{scenario_id}'")
        return report_payload(_run(scenario))

    @app.post("/api/sweep")
    async def run_sweep(request: Request, format: str = "json") -> Response:
        body = await _read_json_body(request)
        unknown = set(body) - {"target", "axes", "fixed"}
        if unknown:
            raise ApiError(400, "malformed_body",
                           f"unknown keys in body: {', '.join(sorted(unknown))}")
        target = body.get("target")
        if not isinstance(target, dict) or "node" not in target or "state" not in target:
            raise ApiError(400, "malformed_body",
                           "'target' must be an object with 'node' and 'state'")
        raw_axes = body.get("axes")
        if not isinstance(raw_axes, list) or not raw_axes:
            raise ApiError(400, "malformed_body", "'axes' must be a non-empty list")
        axes: list[tuple[str, list[str]]] = []
        cell_count = 1
        for i, raw in enumerate(raw_axes):
            if not isinstance(raw, dict) or "node" not in raw:
                raise ApiError(400, "malformed_body", f"axes[{i}] must be an object with 'node'")
            try:
                node = net.node(str(raw["node"]))
            except EvidenceError as exc:
                raise ApiError(400, "unknown_reference", str(exc))
            states = raw.get("states") or list(node.states)
            if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
                raise ApiError(400, "malformed_body", f"axes[{i}].states must be a list of strings")
            axes.append((node.id, states))
            cell_count *= len(states)
        if cell_count > MAX_SWEEP_CELLS:
            raise ApiError(422, "sweep_too_large",
                           f"sweep has {cell_count} cells, limit is {MAX_SWEEP_CELLS}")
        fixed = _evidence_from(body.get("fixed"))
        try:
            table = sweep(net, str(target["node"]), str(target["state"]), axes, fixed)
        except EvidenceError as exc:
            raise ApiError(400, "unknown_reference", str(exc))
        except ValueError as exc:
            raise ApiError(400, "malformed_body", str(exc))
        if format == "csv":
            return PlainTextResponse(export_table(table), media_type="text/csv")
        return JSONResponse(sweep_payload(table))

    if config.static_dir is not None:
        app.mount("/", StaticFiles(directory=str(config.static_dir), html=True), name="ui")

    return app
