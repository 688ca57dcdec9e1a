"""Grading survey service: origin-blind snippets in, grade records out.

The item pool combines every model's candidates with the reference snippets.
Each grader sees the pool in their own seeded random order, one item at a
time; payloads carry the problem intent and the snippet but never any model
identity.  Grades are persisted to an append-only JSON Lines store (one
``write`` per record, flushed before the acknowledgement, so a crash cannot
leave a half-acknowledged grade; a trailing partial line is ignored on
load).  The first grade for a (grader, item) wins; later submissions are
rejected as conflicts.

Endpoints (JSON over HTTP):
    GET  /next?grader=ID      next ungraded item or {"done": true, ...}
    POST /grade               {"grader_id", "item_id", "grade"}
    GET  /progress?grader=ID  {"graded": n, "total": m}
    GET  /export              grades file (?include_references=1 to keep
                              reference-snippet grades)

When a UI directory is configured, its files are served on /.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Iterable
from urllib.parse import parse_qs, urlparse

import numpy as np

from codescore.corpus import (
    CandidateSet,
    EvaluationCorpus,
    GradeRecord,
    ValidationError,
)

REFERENCE_MODEL_PREFIX = "__reference_"


@dataclass(frozen=True)
class PoolItem:
    item_id: str
    problem_id: str
    model_id: str  # internal only; never serialized toward graders
    intent: str
    snippet: str

    @property
    def is_reference(self) -> bool:
        return self.model_id.startswith(REFERENCE_MODEL_PREFIX)


def build_pool(
    corpus: EvaluationCorpus, models: Iterable[CandidateSet]
) -> list[PoolItem]:
    """Deterministic item pool: references first, then models by id, always
    ordered by problem; item ids are positional and carry no origin."""
    items: list[PoolItem] = []

    def add(problem_id: str, model_id: str, intent: str, snippet: str) -> None:
        items.append(
            PoolItem(
                item_id=f"i{len(items):05d}",
                problem_id=problem_id,
                model_id=model_id,
                intent=intent,
                snippet=snippet,
            )
        )

    ordered_models = sorted(models, key=lambda m: m.model_id)
    for problem in corpus:
        for k, reference in enumerate(problem.references):
            add(problem.problem_id, f"{REFERENCE_MODEL_PREFIX}{k}__", problem.intent, reference)
        for model in ordered_models:
            add(
                problem.problem_id,
                model.model_id,
                problem.intent,
                model.candidates[problem.problem_id],
            )
    return items


class GradeStore:
    """Append-only JSONL store with atomic, flushed appends."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._records: list[dict] = []
        self._seen: set[tuple[str, str]] = set()  # (grader_id, item_id)
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        raw = self.path.read_bytes().decode("utf-8", errors="replace")
        for line in raw.split("\n")[:-1]:  # a trailing partial line is dropped
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                continue  # torn write from a crash; ignore
            self._records.append(record)
            self._seen.add((record["grader_id"], record["item_id"]))

    def append(self, record: dict) -> None:
        data = (json.dumps(record, ensure_ascii=False) + "\n").encode("utf-8")
        with self._lock:
            fd = os.open(self.path, os.O_WRONLY | os.O_CREAT | os.O_APPEND, 0o644)
            try:
                os.write(fd, data)  # single write: record lands whole or not at all
                os.fsync(fd)
            finally:
                os.close(fd)
            self._records.append(record)
            self._seen.add((record["grader_id"], record["item_id"]))

    def has(self, grader_id: str, item_id: str) -> bool:
        with self._lock:
            return (grader_id, item_id) in self._seen

    def graded_items(self, grader_id: str) -> set[str]:
        with self._lock:
            return {r["item_id"] for r in self._records if r["grader_id"] == grader_id}

    def records(self) -> list[dict]:
        with self._lock:
            return list(self._records)


class AnnotationService:
    def __init__(
        self,
        corpus: EvaluationCorpus,
        models: Iterable[CandidateSet],
        store: GradeStore,
        seed: int = 0,
    ):
        self.pool = build_pool(corpus, models)
        self.by_id = {item.item_id: item for item in self.pool}
        self.store = store
        self.seed = seed
        self._orders: dict[str, list[str]] = {}
        self._session_ids: dict[str, str] = {}

    def _order_for(self, grader_id: str) -> list[str]:
        """Seeded permutation of the pool, stable per grader."""
        if grader_id not in self._orders:
            digest = hashlib.sha256(grader_id.encode("utf-8")).digest()
            entropy = [self.seed, int.from_bytes(digest[:8], "big")]
            rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
            order = list(rng.permutation(len(self.pool)))
            self._orders[grader_id] = [self.pool[i].item_id for i in order]
            self._session_ids[grader_id] = f"s-{digest[:6].hex()}"
        return self._orders[grader_id]

    def next_item(self, grader_id: str) -> dict:
        """Next ungraded item of the grader's permutation, origin-blind."""
        order = self._order_for(grader_id)
        graded = self.store.graded_items(grader_id)
        for item_id in order:
            if item_id not in graded:
                item = self.by_id[item_id]
                return {
                    "item_id": item.item_id,
                    "intent": item.intent,
                    "snippet": item.snippet,
                }
        return {"done": True, "graded": len(graded), "total": len(self.pool)}

    def submit_grade(self, grader_id: str, item_id: str, grade) -> dict:
        if item_id not in self.by_id:
            raise KeyError(f"unknown item {item_id!r}")
        if not isinstance(grade, int) or isinstance(grade, bool) or not 0 <= grade <= 4:
            raise ValidationError(f"grade {grade!r} is outside the 0-4 scale")
        self._order_for(grader_id)
        if self.store.has(grader_id, item_id):
            raise ConflictError(f"grader {grader_id!r} already graded {item_id!r}")
        item = self.by_id[item_id]
        self.store.append(
            {
                "problem_id": item.problem_id,
                "model_id": item.model_id,
                "grader_id": grader_id,
                "grade": grade,
                "item_id": item_id,
                "session_id": self._session_ids[grader_id],
                "timestamp": time.time(),
            }
        )
        return {"ok": True, "item_id": item_id, "grade": grade}

    def progress(self, grader_id: str) -> dict:
        graded = self.store.graded_items(grader_id)
        return {"graded": len(graded), "total": len(self.pool)}

    def export_records(self, include_references: bool = False) -> list[GradeRecord]:
        records = []
        for raw in self.store.records():
            if not include_references and raw["model_id"].startswith(
                REFERENCE_MODEL_PREFIX
            ):
                continue
            records.append(
                GradeRecord(
                    problem_id=raw["problem_id"],
                    model_id=raw["model_id"],
                    grader_id=raw["grader_id"],
                    grade=raw["grade"],
                )
            )
        return records

    def export_text(self, include_references: bool = False) -> str:
        lines = [
            json.dumps(
                {
                    "problem_id": rec.problem_id,
                    "model_id": rec.model_id,
                    "grader_id": rec.grader_id,
                    "grade": rec.grade,
                },
                ensure_ascii=False,
            )
            for rec in self.export_records(include_references)
        ]
        return "".join(line + "\n" for line in lines)


class ConflictError(Exception):
    pass


def make_handler(service: AnnotationService, ui_dir: Path | None):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # keep test output quiet
            pass

        def _send(self, status: int, body: bytes, content_type: str) -> None:
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _send_json(self, status: int, payload: dict) -> None:
            body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
            self._send(status, body, "application/json; charset=utf-8")

        def do_GET(self):
            url = urlparse(self.path)
            query = parse_qs(url.query)
            if url.path == "/next":
                grader = query.get("grader", [""])[0]
                if not grader:
                    return self._send_json(400, {"error": "grader is required"})
                return self._send_json(200, service.next_item(grader))
            if url.path == "/progress":
                grader = query.get("grader", [""])[0]
                if not grader:
                    return self._send_json(400, {"error": "grader is required"})
                return self._send_json(200, service.progress(grader))
            if url.path == "/export":
                include = query.get("include_references", ["0"])[0] in ("1", "true")
                body = service.export_text(include).encode("utf-8")
                return self._send(200, body, "application/jsonl; charset=utf-8")
            if ui_dir is not None:
                return self._serve_static(url.path)
            return self._send_json(404, {"error": "not found"})

        def _serve_static(self, path: str) -> None:
            name = "index.html" if path == "/" else path.lstrip("/")
            target = (ui_dir / name).resolve()
            if not str(target).startswith(str(ui_dir.resolve())) or not target.is_file():
                return self._send_json(404, {"error": "not found"})
            types = {
                ".html": "text/html; charset=utf-8",
                ".js": "text/javascript; charset=utf-8",
                ".css": "text/css; charset=utf-8",
            }
            content_type = types.get(target.suffix, "application/octet-stream")
            self._send(200, target.read_bytes(), content_type)

        def do_POST(self):
            url = urlparse(self.path)
            if url.path != "/grade":
                return self._send_json(404, {"error": "not found"})
            length = int(self.headers.get("Content-Length", "0"))
            try:
                payload = json.loads(self.rfile.read(length) or b"{}")
            except json.JSONDecodeError:
                return self._send_json(400, {"error": "invalid JSON"})
            grader = payload.get("grader_id")
            item_id = payload.get("item_id")
            if not grader or not item_id:
                return self._send_json(
                    400, {"error": "grader_id and item_id are required"}
                )
            try:
                ack = service.submit_grade(grader, item_id, payload.get("grade"))
            except ValidationError as exc:
                return self._send_json(400, {"error": str(exc)})
            except ConflictError as exc:
                return self._send_json(409, {"error": str(exc)})
            except KeyError as exc:
                return self._send_json(404, {"error": str(exc.args[0])})
            return self._send_json(200, ack)

    return Handler


def serve(
    service: AnnotationService,
    port: int,
    ui_dir: Path | None = None,
    host: str = "127.0.0.1",
) -> ThreadingHTTPServer:
    """Create the HTTP server (caller runs serve_forever, possibly in a thread)."""
    handler = make_handler(service, ui_dir)
    return ThreadingHTTPServer((host, port), handler)
