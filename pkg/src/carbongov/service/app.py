"""HTTP facade over the engine."""
from __future__ import annotations

import json
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import __version__
from ..agents import route_request
from ..demo import demo_testset
from ..errors import (
    BackendUnavailable,
    CarbonGovError,
    InvalidConfig,
    InvalidRequest,
    IoFailure,
    MissingCity,
    NoQueries,
    NoRequiredFields,
    RemoteUnavailable,
    ScoreOutOfRange,
)
from ..evaluation import TestQuery, load_testset
from ..runtime import Engine
from .jobs import JobStore
from .models import (
    EvalReportSummary,
    EvalRunRequest,
    EvidenceResponse,
    JobLaunched,
    QueryRequest,
    WorkflowLaunch,
)

_BAD_REQUEST = (
    InvalidRequest,
    MissingCity,
    InvalidConfig,
    NoQueries,
    NoRequiredFields,
    ScoreOutOfRange,
)
_UNAVAILABLE = (BackendUnavailable, RemoteUnavailable)


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="milliseconds")


class EvalReportStore:
    """Completed evaluation runs, kept in memory and mirrored to disk."""

    def __init__(self, directory: Path | None = None):
        self._dir = directory
        self._lock = threading.Lock()
        self._records: dict[str, dict[str, Any]] = {}
        if directory is not None and directory.is_dir():
            for path in sorted(directory.glob("eval-*.json")):
                try:
                    record = json.loads(path.read_text(encoding="utf-8"))
                except (OSError, json.JSONDecodeError):
                    continue
                self._records[record["report_id"]] = record

    def add(self, report: dict[str, Any]) -> dict[str, Any]:
        record = {
            "report_id": f"eval-{uuid.uuid4().hex[:12]}",
            "created_at": _utc_now(),
            "report": report,
        }
        with self._lock:
            self._records[record["report_id"]] = record
        if self._dir is not None:
            self._dir.mkdir(parents=True, exist_ok=True)
            path = self._dir / f"{record['report_id']}.json"
            tmp = path.with_name(path.name + ".tmp")
            try:
                tmp.write_text(
                    json.dumps(record, ensure_ascii=False, indent=2), encoding="utf-8")
                tmp.replace(path)
            except OSError as exc:
                raise IoFailure(f"cannot persist evaluation report: {exc}") from exc
        return record

    def get(self, report_id: str) -> dict[str, Any] | None:
        with self._lock:
            return self._records.get(report_id)

    def list(self) -> list[dict[str, Any]]:
        with self._lock:
            records = sorted(self._records.values(), key=lambda r: (r["created_at"], r["report_id"]))
        return [
            {
                "report_id": r["report_id"],
                "created_at": r["created_at"],
                "setting": r["report"]["setting"],
                "rag": r["report"]["rag_enabled"],
                "n": r["report"]["n"],
                "avg_score": r["report"]["avg_score"],
            }
            for r in records
        ]


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="carbongov", version=__version__)
    # The browser console is served separately from the API, so cross-origin
    # requests must be allowed. Nothing here uses cookies or credentials.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.engine = engine
    app.state.jobs = JobStore()
    app.state.eval_reports = EvalReportStore(engine.config.artifacts_dir)
    audit_lock = threading.Lock()

    def audit_job(record) -> None:
        directory = engine.config.artifacts_dir
        if directory is None:
            return
        line = json.dumps(record.to_dict(), ensure_ascii=False)
        try:
            directory.mkdir(parents=True, exist_ok=True)
            with audit_lock, (directory / "jobs.jsonl").open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")
        except OSError:
            pass  # the job record itself stays pollable either way

    @app.exception_handler(CarbonGovError)
    async def domain_error(request: Request, exc: CarbonGovError) -> JSONResponse:
        if isinstance(exc, _UNAVAILABLE):
            status = 503
        elif isinstance(exc, _BAD_REQUEST):
            status = 400
        else:
            status = 500
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/health")
    def health() -> dict[str, Any]:
        return {
            "status": "ok",
            "version": __version__,
            "chunks_indexed": len(engine.index),
            "documents": len(engine.store.documents),
        }

    @app.post("/query")
    def query(body: QueryRequest) -> dict[str, Any]:
        if not body.question.strip():
            raise HTTPException(status_code=400, detail="question must not be empty")
        answer = engine.qa(body.question, k=body.k, flt=body.filter.to_filter())
        return answer.to_dict()

    @app.post("/workflows", status_code=202, response_model=JobLaunched)
    def launch_workflow(body: WorkflowLaunch) -> JobLaunched:
        request = body.to_request()
        # Validate routing (kind/city combinations) before queueing so bad
        # requests fail with 400 instead of a Failed job.
        route_request(request)
        job_id = app.state.jobs.submit(
            request, lambda: engine.workflow(request).to_dict(), on_finish=audit_job)
        return JobLaunched(job_id=job_id)

    @app.get("/workflows/{job_id}")
    def workflow_status(job_id: str) -> dict[str, Any]:
        record = app.state.jobs.get(job_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"no job with id {job_id!r}")
        return record.to_dict()

    @app.get("/evidence/{chunk_id:path}", response_model=EvidenceResponse)
    def evidence(chunk_id: str) -> EvidenceResponse:
        info = engine.evidence(chunk_id)
        if info is None:
            raise HTTPException(
                status_code=404,
                detail=(
                    f"no chunk {chunk_id!r} in the current corpus; "
                    "it may reference a document that was removed or re-ingested"
                ),
            )
        return EvidenceResponse(**info)

    @app.post("/eval/run")
    def eval_run(body: EvalRunRequest) -> dict[str, Any]:
        if body.testset_path is not None:
            try:
                queries = load_testset(Path(body.testset_path))
            except IoFailure as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
        else:
            queries = [TestQuery.from_dict(r) for r in demo_testset()]
        report = engine.eval_suite(queries, rag_enabled=body.rag, setting=body.setting)
        record = app.state.eval_reports.add(report.to_dict())
        return record

    @app.get("/eval/reports", response_model=list[EvalReportSummary])
    def eval_reports() -> list[dict[str, Any]]:
        return app.state.eval_reports.list()

    @app.get("/eval/reports/{report_id}")
    def eval_report(report_id: str) -> dict[str, Any]:
        record = app.state.eval_reports.get(report_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"no evaluation report with id {report_id!r}")
        return record

    return app
