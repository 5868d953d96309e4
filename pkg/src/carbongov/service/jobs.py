"""Asynchronous workflow jobs backed by a small worker pool."""
from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Callable

from ..agents import WorkflowRequest


class JobStatus(str, Enum):
    Queued = "Queued"
    Running = "Running"
    Done = "Done"
    Failed = "Failed"


TERMINAL_STATES = frozenset({JobStatus.Done, JobStatus.Failed})


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="milliseconds")


@dataclass
class JobRecord:
    job_id: str
    request: WorkflowRequest
    status: JobStatus = JobStatus.Queued
    result: dict[str, Any] | None = None
    error: str | None = None
    created_at: str = field(default_factory=_utc_now)
    started_at: str | None = None
    finished_at: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "job_id": self.job_id,
            "request": self.request.to_dict(),
            "status": self.status.value,
            "result": self.result,
            "error": self.error,
            "created_at": self.created_at,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }


class JobStore:
    """Tracks jobs through Queued -> Running -> Done/Failed.

    Terminal records are frozen: once a job is Done or Failed no further
    transition touches it, so polled results never change under a client.
    """

    def __init__(self, max_workers: int = 2):
        self._jobs: dict[str, JobRecord] = {}
        self._lock = threading.Lock()
        self._pool = ThreadPoolExecutor(max_workers=max_workers)

    def get(self, job_id: str) -> JobRecord | None:
        with self._lock:
            return self._jobs.get(job_id)

    def submit(
        self,
        request: WorkflowRequest,
        runner: Callable[[], dict[str, Any]],
        on_finish: Callable[[JobRecord], None] | None = None,
    ) -> str:
        job_id = f"job-{uuid.uuid4().hex[:12]}"
        with self._lock:
            self._jobs[job_id] = JobRecord(job_id=job_id, request=request)
        self._pool.submit(self._run, job_id, runner, on_finish)
        return job_id

    def _transition(self, job_id: str, status: JobStatus, **updates: Any) -> JobRecord | None:
        with self._lock:
            record = self._jobs[job_id]
            if record.status in TERMINAL_STATES:
                return None
            record.status = status
            for name, value in updates.items():
                setattr(record, name, value)
            return record

    def _run(
        self,
        job_id: str,
        runner: Callable[[], dict[str, Any]],
        on_finish: Callable[[JobRecord], None] | None,
    ) -> None:
        if self._transition(job_id, JobStatus.Running, started_at=_utc_now()) is None:
            return
        try:
            result = runner()
        except Exception as exc:
            record = self._transition(
                job_id, JobStatus.Failed, error=str(exc), finished_at=_utc_now())
        else:
            record = self._transition(
                job_id, JobStatus.Done, result=result, finished_at=_utc_now())
        if record is not None and on_finish is not None:
            on_finish(record)

    def shutdown(self) -> None:
        self._pool.shutdown(wait=True)
