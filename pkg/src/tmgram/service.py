"""HTTP facade over the engine.

Thin layer: pydantic models describe the wire format, the engine does the
work. Validation failures come back as 400 with a machine-readable error
code; store write failures as 503 (the index is only updated after the
store append succeeds, so a failed write changes nothing).
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .engine import ApiConfig, Engine
from .errors import StoreError, TmError, TmxError
from .index import MatchResult
from .phrases import SuggestReport

__all__ = ["create_app", "run_server"]


class ResultItem(BaseModel):
    rank: int
    score: float
    kind: str
    source: str
    target: str
    unit_id: str


class QueryRequest(BaseModel):
    text: str = Field(min_length=1)
    limit: int = Field(default=5, ge=1, le=100)


class QueryResponse(BaseModel):
    results: list[ResultItem]
    k: float
    order: int


class SuggestRequest(BaseModel):
    text: str = Field(min_length=1)
    limit: int = Field(default=5, ge=1, le=100)


class SuggestionItem(BaseModel):
    rank: int
    score: float
    source: str
    target: str
    unit_id: str


class PhraseMatchItem(BaseModel):
    phrase: str
    span: tuple[int, int]
    char_start: int
    char_end: int
    suggestions: list[SuggestionItem]


class SuggestResponse(BaseModel):
    sentence_matches: list[ResultItem]
    phrase_matches: list[PhraseMatchItem]
    k: float
    order: int


class CommitRequest(BaseModel):
    source: str = Field(min_length=1)
    target: str = Field(min_length=1)
    scope: str = Field(default="local", pattern="^(local|global)$")


class CommitResponse(BaseModel):
    unit_id: str
    created: bool
    source: str
    target: str
    scope: str
    k: float
    order: int


class ImportResponse(BaseModel):
    added: int
    skipped: int
    malformed: int
    k: float
    order: int


class StatsResponse(BaseModel):
    units: int
    local_units: int
    global_units: int
    k: float
    order: int


class HealthResponse(BaseModel):
    status: str
    version: str
    k: float
    order: int


def _result_items(matches: list[MatchResult]) -> list[ResultItem]:
    return [
        ResultItem(
            rank=m.rank,
            score=m.score.value,
            kind=m.kind,
            source=m.unit.source.raw,
            target=m.unit.target.raw,
            unit_id=m.unit.id,
        )
        for m in matches
    ]


def _suggest_response(report: SuggestReport, k: float, order: int) -> SuggestResponse:
    phrase_items = []
    for group in report.phrase_matches:
        phrase_items.append(
            PhraseMatchItem(
                phrase=group.phrase,
                span=group.span,
                char_start=group.char_start,
                char_end=group.char_end,
                suggestions=[
                    SuggestionItem(
                        rank=s.rank,
                        score=s.score.value,
                        source=s.unit.source.raw,
                        target=s.target_text,
                        unit_id=s.unit.id,
                    )
                    for s in group.suggestions
                ],
            )
        )
    return SuggestResponse(
        sentence_matches=_result_items(report.sentence_matches),
        phrase_matches=phrase_items,
        k=k,
        order=order,
    )


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": {"code": code, "message": message}}
    )


def create_app(config: ApiConfig | None = None, engine: Engine | None = None) -> FastAPI:
    """Build the FastAPI app; pass an engine to reuse one already open."""
    if engine is None:
        engine = Engine(config if config is not None else ApiConfig())

    app = FastAPI(title="tmgram", version=__version__)
    app.state.engine = engine
    if engine.config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(engine.config.cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    k, order = engine.config.k, engine.config.order

    @app.exception_handler(RequestValidationError)
    async def on_bad_body(request: Request, exc: RequestValidationError):
        return _error(400, "invalid_body", str(exc.errors()[:3]))

    @app.exception_handler(StoreError)
    async def on_store_error(request: Request, exc: StoreError):
        return _error(503, "store_unavailable", str(exc))

    @app.exception_handler(TmError)
    async def on_tm_error(request: Request, exc: TmError):
        return _error(400, "invalid_request", str(exc))

    @app.get("/api/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__, k=k, order=order)

    @app.get("/api/stats", response_model=StatsResponse)
    def stats() -> StatsResponse:
        s = engine.stats()
        return StatsResponse(
            units=s.units,
            local_units=s.local_units,
            global_units=s.global_units,
            k=s.k,
            order=s.order,
        )

    @app.post("/api/query", response_model=QueryResponse)
    def query(body: QueryRequest) -> QueryResponse:
        matches = engine.query(body.text, limit=body.limit)
        return QueryResponse(results=_result_items(matches), k=k, order=order)

    @app.post("/api/suggest", response_model=SuggestResponse)
    def suggest(body: SuggestRequest) -> SuggestResponse:
        report = engine.suggest(body.text, limit=body.limit)
        return _suggest_response(report, k=k, order=order)

    @app.post("/api/commit", response_model=CommitResponse)
    def commit(body: CommitRequest) -> CommitResponse:
        unit, created = engine.commit(body.source, body.target, scope=body.scope)
        return CommitResponse(
            unit_id=unit.id,
            created=created,
            source=unit.source.raw,
            target=unit.target.raw,
            scope=unit.meta.scope,
            k=k,
            order=order,
        )

    @app.post("/api/import", response_model=ImportResponse)
    async def import_tmx(request: Request, scope: str = "local") -> ImportResponse:
        if scope not in ("local", "global"):
            raise TmError(f"unknown scope {scope!r}")
        payload = await request.body()
        if not payload:
            raise TmxError("empty import payload")
        summary = engine.import_tmx(payload, scope=scope)
        return ImportResponse(
            added=summary.added,
            skipped=summary.skipped,
            malformed=summary.malformed,
            k=k,
            order=order,
        )

    @app.get("/api/export")
    def export(scope: str = "all") -> Response:
        if scope not in ("local", "global", "all"):
            raise TmError(f"unknown scope {scope!r}")
        data = engine.export_tmx(scope=scope)
        return Response(content=data, media_type="application/xml")

    return app


def run_server(config: ApiConfig) -> None:
    """Blocking uvicorn runner used by the CLI's serve subcommand."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
