"""HTTP/JSON facade over scoring and what-if analysis.

Sessions hold a scenario overlay (overrides + removals) against the immutable
base graph, so interactive what-if costs O(overlay) memory and every readout
is recomputed from the overlay at request time. Sessions are in-memory only
and expire after an idle timeout. Long-running ranking jobs fall back to
202 + polling when they exceed the request timeout.

Payload schemas are documented in docs/api.md.
"""

from __future__ import annotations

import threading
import time
import uuid
from concurrent.futures import Future, ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass, field as dc_field

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, field_validator

from . import __version__
from .errors import HarmnetError, InvalidOverlay, UnknownNode
from .graph import Direction, HarmGraph, diameter
from .ingest import graph_to_doc
from .metrics import HarmConfig, level_breakdown, parse_aggregator
from .paths import PathScheme
from .whatif import (
    ReportKind,
    ScenarioOverlay,
    global_influence_all,
    rank_report,
    scored_with,
)


class ConfigModel(BaseModel):
    inner: str = "avg"
    outer: str = "max"
    alpha: float = Field(default=0.85, gt=0, le=1)
    m_max: int | None = Field(default=None, ge=1)
    scheme: str = "shortest-all"
    direction: str = "upstream"

    @field_validator("inner", "outer")
    @classmethod
    def _check_aggregator(cls, v: str) -> str:
        parse_aggregator(v)  # raises ValueError on bad input
        return v

    @field_validator("scheme")
    @classmethod
    def _check_scheme(cls, v: str) -> str:
        if v not in [s.value for s in PathScheme]:
            raise ValueError(f"unknown scheme {v!r}")
        return v

    @field_validator("direction")
    @classmethod
    def _check_direction(cls, v: str) -> str:
        if v not in [d.value for d in Direction]:
            raise ValueError(f"unknown direction {v!r}")
        return v

    def resolve(self, g: HarmGraph) -> HarmConfig:
        return HarmConfig(
            inner=parse_aggregator(self.inner),
            outer=parse_aggregator(self.outer),
            alpha=self.alpha,
            m_max=self.m_max if self.m_max is not None else max(1, diameter(g)),
            scheme=PathScheme(self.scheme),
            direction=Direction(self.direction),
        )


class ScoreRequest(BaseModel):
    target: str
    config: ConfigModel = ConfigModel()


class SessionRequest(BaseModel):
    target: str
    config: ConfigModel = ConfigModel()


class OverrideRequest(BaseModel):
    node: str
    harm: float = Field(ge=0, le=100)


class RemoveRequest(BaseModel):
    node: str


class RankingRequest(BaseModel):
    kind: str
    target: str | None = None
    config: ConfigModel = ConfigModel()
    top_n: int = Field(default=10, ge=1)

    @field_validator("kind")
    @classmethod
    def _check_kind(cls, v: str) -> str:
        if v not in ("vulnerability", "influence", "global"):
            raise ValueError("kind must be vulnerability, influence or global")
        return v


@dataclass
class Session:
    id: str
    target_label: str
    config: HarmConfig
    baseline: float
    overrides: dict[str, float] = dc_field(default_factory=dict)
    removed: set[str] = dc_field(default_factory=set)
    last_access: float = 0.0
    lock: threading.Lock = dc_field(default_factory=threading.Lock)


def _error(status: int, message: str):
    return JSONResponse(status_code=status, content={"error": message})


def create_app(
    graph: HarmGraph | None,
    session_timeout: float = 3600.0,
    ranking_timeout: float = 60.0,
    ranking_workers: int = 2,
    clock=time.monotonic,
    ui_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="harmnet", version=__version__)
    app.state.graph = graph
    sessions: dict[str, Session] = {}
    sessions_lock = threading.Lock()
    executor = ThreadPoolExecutor(max_workers=ranking_workers)
    jobs: dict[str, Future] = {}

    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"http://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.middleware("http")
    async def version_header(request: Request, call_next):
        response: Response = await call_next(request)
        response.headers["X-Harmnet-Version"] = __version__
        return response

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        fields = [
            {"field": ".".join(str(p) for p in err["loc"] if p != "body"), "message": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"error": "validation failed", "fields": fields})

    @app.exception_handler(HarmnetError)
    async def harmnet_handler(request: Request, exc: HarmnetError):
        status = 404 if isinstance(exc, UnknownNode) else 400
        return JSONResponse(status_code=status, content={"error": str(exc)})

    def need_graph() -> HarmGraph:
        g = app.state.graph
        if g is None:
            raise _NotLoaded()
        return g

    class _NotLoaded(Exception):
        pass

    @app.exception_handler(_NotLoaded)
    async def not_loaded_handler(request: Request, exc: _NotLoaded):
        return _error(503, "graph not loaded yet")

    # -- sessions ----------------------------------------------------------

    def get_session(session_id: str) -> Session:
        now = clock()
        with sessions_lock:
            expired = [
                sid for sid, s in sessions.items() if now - s.last_access > session_timeout
            ]
            for sid in expired:
                del sessions[sid]
            session = sessions.get(session_id)
        if session is None:
            raise _NoSession()
        session.last_access = now
        return session

    class _NoSession(Exception):
        pass

    @app.exception_handler(_NoSession)
    async def no_session_handler(request: Request, exc: _NoSession):
        return _error(404, "no such session (it may have expired)")

    def overlay_of(g: HarmGraph, session: Session) -> ScenarioOverlay:
        return ScenarioOverlay(
            harm_overrides={g.node_id(lab): h for lab, h in session.overrides.items()},
            removed_nodes=frozenset(g.node_id(lab) for lab in session.removed),
        )

    def session_payload(g: HarmGraph, session: Session) -> dict:
        overlay = overlay_of(g, session)
        H = scored_with(g, overlay, g.node_id(session.target_label), session.config)
        return {
            "id": session.id,
            "target": session.target_label,
            "H": H,
            "baseline": session.baseline,
            "delta": H - session.baseline,
            "overrides": dict(sorted(session.overrides.items())),
            "removed": sorted(session.removed),
            "config": session.config.to_dict(),
        }

    # -- endpoints -----------------------------------------------------------

    @app.get("/api/health")
    def health():
        g = app.state.graph
        return {
            "version": __version__,
            "status": "ready" if g is not None else "loading",
            "nodes": g.num_nodes if g is not None else 0,
            "edges": g.num_edges if g is not None else 0,
        }

    @app.get("/api/graph")
    def get_graph():
        g = need_graph()
        doc = graph_to_doc(g)
        doc["labels"] = {lab: i for i, lab in enumerate(g.labels)}
        return doc

    @app.post("/api/score")
    def score(req: ScoreRequest):
        g = need_graph()
        target = g.node_id(req.target)  # 404 on unknown label
        cfg = req.config.resolve(g)
        H, rows = level_breakdown(g, target, cfg)
        return {"target": req.target, "H": H, "levels": rows, "config": cfg.to_dict()}

    @app.post("/api/session", status_code=201)
    def create_session(req: SessionRequest):
        g = need_graph()
        target = g.node_id(req.target)
        cfg = req.config.resolve(g)
        baseline = scored_with(g, ScenarioOverlay(), target, cfg)
        session = Session(
            id=uuid.uuid4().hex,
            target_label=req.target,
            config=cfg,
            baseline=baseline,
            last_access=clock(),
        )
        with sessions_lock:
            sessions[session.id] = session
        return session_payload(g, session)

    @app.get("/api/session/{session_id}")
    def read_session(session_id: str):
        g = need_graph()
        session = get_session(session_id)
        with session.lock:
            return session_payload(g, session)

    @app.post("/api/session/{session_id}/override")
    def override_node(session_id: str, req: OverrideRequest):
        g = need_graph()
        session = get_session(session_id)
        g.node_id(req.node)
        with session.lock:
            if req.node in session.removed:
                return _error(409, f"{req.node} is removed in this scenario")
            session.overrides[req.node] = req.harm
            return session_payload(g, session)

    @app.post("/api/session/{session_id}/remove")
    def remove_node(session_id: str, req: RemoveRequest):
        g = need_graph()
        session = get_session(session_id)
        g.node_id(req.node)
        with session.lock:
            if req.node in session.overrides:
                return _error(409, f"{req.node} is overridden in this scenario")
            if req.node == session.target_label:
                return _error(409, "the session target cannot be removed")
            session.removed.add(req.node)
            return session_payload(g, session)

    @app.delete("/api/session/{session_id}/overlay")
    def reset_overlay(session_id: str):
        g = need_graph()
        session = get_session(session_id)
        with session.lock:
            session.overrides.clear()
            session.removed.clear()
            return session_payload(g, session)

    @app.delete("/api/session/{session_id}", status_code=204)
    def delete_session(session_id: str):
        get_session(session_id)
        with sessions_lock:
            sessions.pop(session_id, None)
        return Response(status_code=204)

    # -- rankings ------------------------------------------------------------

    def compute_ranking(g: HarmGraph, req: RankingRequest) -> dict:
        cfg = req.config.resolve(g)
        if req.kind == "global":
            gi = global_influence_all(g, cfg)
            ordered = sorted(gi, key=lambda b: (gi[b], g.labels[b]))[: req.top_n]
            entries = [
                {"label": g.labels[b], "score": gi[b], "rank": i + 1}
                for i, b in enumerate(ordered)
            ]
        else:
            if req.target is None:
                raise InvalidOverlay("vulnerability/influence rankings need a target")
            kind = (
                ReportKind.VULNERABILITY
                if req.kind == "vulnerability"
                else ReportKind.INFLUENCE
            )
            report = rank_report(g, g.node_id(req.target), kind, cfg, req.top_n)
            entries = [
                {"label": g.labels[b], "score": report.scores[b], "rank": i + 1}
                for i, b in enumerate(report.ranking)
            ]
        return {"kind": req.kind, "target": req.target, "entries": entries}

    @app.post("/api/rankings")
    def rankings(req: RankingRequest):
        g = need_graph()
        if req.kind != "global":
            if req.target is None:
                return _error(400, "vulnerability/influence rankings need a target")
            g.node_id(req.target)
        future = executor.submit(compute_ranking, g, req)
        try:
            return future.result(timeout=ranking_timeout)
        except FutureTimeout:
            job_id = uuid.uuid4().hex
            jobs[job_id] = future
            return JSONResponse(status_code=202, content={"job": job_id, "status": "pending"})

    @app.get("/api/jobs/{job_id}")
    def job_status(job_id: str):
        future = jobs.get(job_id)
        if future is None:
            return _error(404, "no such job")
        if not future.done():
            return JSONResponse(status_code=202, content={"job": job_id, "status": "pending"})
        jobs.pop(job_id, None)
        exc = future.exception()
        if exc is not None:
            if isinstance(exc, HarmnetError):
                return _error(400, str(exc))
            return _error(500, str(exc))
        return future.result()

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
