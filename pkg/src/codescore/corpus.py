"""Data model and file ingestion for problems, model outputs, and grades.

All on-disk formats are JSON Lines: one object per line.

* references file: ``{"problem_id", "intent", "reference"}`` -- multiple
  records with the same ``problem_id`` merge their references in file order
  (datasets legitimately carry more than one reference per problem).
* candidates file: ``{"problem_id", "candidate"}``
* grades file: ``{"problem_id", "model_id", "grader_id", "grade"}``

Snippet text is stored verbatim, byte-preserving; metrics decide their own
normalization.  Loaded objects are treated as immutable and are safe to share
across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

GRADE_RANGE = (0, 1, 2, 3, 4)


class DataError(Exception):
    """Base class for data loading and validation failures."""


class ParseError(DataError):
    """A record could not be parsed; carries file path and line number."""

    def __init__(self, path: str | Path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


class ValidationError(DataError):
    """Structurally valid input that violates a corpus-level contract."""


@dataclass(frozen=True)
class Problem:
    problem_id: str
    intent: str
    references: tuple[str, ...]

    def __post_init__(self):
        if not self.references:
            raise ValidationError(f"problem {self.problem_id!r} has no references")


@dataclass(frozen=True)
class EvaluationCorpus:
    """Problems keyed by id, in first-appearance order (order is load-bearing:
    it fixes the floating-point summation order of every corpus metric)."""

    problems: Mapping[str, Problem]
    dataset_label: str = ""

    def __post_init__(self):
        if not self.problems:
            raise ValidationError("corpus is empty")

    def __len__(self) -> int:
        return len(self.problems)

    def __iter__(self) -> Iterator[Problem]:
        return iter(self.problems.values())

    @property
    def problem_ids(self) -> tuple[str, ...]:
        return tuple(self.problems)


@dataclass(frozen=True)
class CandidateSet:
    """One model's output: exactly one candidate snippet per corpus problem.

    ``sources`` is set only on synthetic models and maps every problem id to
    the original model whose snippet (and therefore whose human grade) the
    entry was taken from.
    """

    model_id: str
    candidates: Mapping[str, str]
    sources: Mapping[str, str] | None = field(default=None, compare=False)

    def grade_source(self, problem_id: str) -> str:
        if self.sources is not None:
            return self.sources[problem_id]
        return self.model_id


@dataclass(frozen=True)
class GradeRecord:
    problem_id: str
    model_id: str
    grader_id: str
    grade: int

    def __post_init__(self):
        if self.grade not in GRADE_RANGE:
            raise ValidationError(
                f"grade {self.grade!r} for ({self.problem_id}, {self.model_id}) "
                f"is outside 0-4"
            )


def _coerce_id(value) -> str:
    # ids are opaque strings; integer-like ids from JSON are accepted as-is
    if isinstance(value, str):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    raise TypeError(f"id must be a string, got {value!r}")


def _iter_records(path: str | Path, fields: Sequence[str]) -> Iterator[tuple[int, dict]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(path, lineno, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(record, dict):
                raise ParseError(path, lineno, "record is not an object")
            for name in fields:
                if name not in record:
                    raise ParseError(path, lineno, f"missing field {name!r}")
            yield lineno, record


def load_corpus(path: str | Path, dataset_label: str | None = None) -> EvaluationCorpus:
    """Load a references file.  Records sharing a problem_id merge their
    references in file order; the first record's intent wins."""
    intents: dict[str, str] = {}
    references: dict[str, list[str]] = {}
    for lineno, record in _iter_records(path, ("problem_id", "intent", "reference")):
        try:
            pid = _coerce_id(record["problem_id"])
        except TypeError as exc:
            raise ParseError(path, lineno, str(exc)) from exc
        if not isinstance(record["reference"], str) or not isinstance(record["intent"], str):
            raise ParseError(path, lineno, "intent and reference must be strings")
        if pid not in intents:
            intents[pid] = record["intent"]
            references[pid] = []
        references[pid].append(record["reference"])
    if not intents:
        raise ValidationError(f"{path}: empty corpus (no records)")
    problems = {
        pid: Problem(pid, intents[pid], tuple(references[pid])) for pid in intents
    }
    label = dataset_label if dataset_label is not None else Path(path).stem
    return EvaluationCorpus(problems=problems, dataset_label=label)


def load_candidates(
    path: str | Path, corpus: EvaluationCorpus, model_id: str | None = None
) -> CandidateSet:
    """Load a candidates file and check it covers the corpus exactly."""
    candidates: dict[str, str] = {}
    for lineno, record in _iter_records(path, ("problem_id", "candidate")):
        try:
            pid = _coerce_id(record["problem_id"])
        except TypeError as exc:
            raise ParseError(path, lineno, str(exc)) from exc
        if not isinstance(record["candidate"], str):
            raise ParseError(path, lineno, "candidate must be a string")
        if pid not in corpus.problems:
            raise ValidationError(f"{path}:{lineno}: unknown problem id {pid!r}")
        if pid in candidates:
            raise ValidationError(f"{path}:{lineno}: duplicate candidate for {pid!r}")
        candidates[pid] = record["candidate"]
    for pid in corpus.problem_ids:
        if pid not in candidates:
            raise ValidationError(f"{path}: missing candidate for {pid}")
    # store in corpus order so downstream iteration order is canonical
    ordered = {pid: candidates[pid] for pid in corpus.problem_ids}
    return CandidateSet(model_id=model_id or Path(path).stem, candidates=ordered)


def load_grades(
    path: str | Path, corpus: EvaluationCorpus, model_ids: Iterable[str]
) -> list[GradeRecord]:
    """Load raw per-grader grades; every record must reference a known
    (problem, model) pair and carry a grade in 0-4."""
    known_models = set(model_ids)
    records: list[GradeRecord] = []
    for lineno, record in _iter_records(
        path, ("problem_id", "model_id", "grader_id", "grade")
    ):
        try:
            pid = _coerce_id(record["problem_id"])
            grader = _coerce_id(record["grader_id"])
        except TypeError as exc:
            raise ParseError(path, lineno, str(exc)) from exc
        model = record["model_id"]
        if pid not in corpus.problems:
            raise ValidationError(f"{path}:{lineno}: unknown problem id {pid!r}")
        if model not in known_models:
            raise ValidationError(f"{path}:{lineno}: unknown model id {model!r}")
        grade = record["grade"]
        if not isinstance(grade, int) or isinstance(grade, bool) or grade not in GRADE_RANGE:
            raise ValidationError(
                f"{path}:{lineno}: grade {grade!r} is outside the 0-4 scale"
            )
        records.append(GradeRecord(pid, model, grader, grade))
    return records


def write_corpus(corpus: EvaluationCorpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for problem in corpus:
            for ref in problem.references:
                fh.write(
                    json.dumps(
                        {
                            "problem_id": problem.problem_id,
                            "intent": problem.intent,
                            "reference": ref,
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )


def write_candidates(candidates: CandidateSet, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for pid, snippet in candidates.candidates.items():
            fh.write(
                json.dumps({"problem_id": pid, "candidate": snippet}, ensure_ascii=False)
                + "\n"
            )


def write_grades(records: Iterable[GradeRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(
                json.dumps(
                    {
                        "problem_id": rec.problem_id,
                        "model_id": rec.model_id,
                        "grader_id": rec.grader_id,
                        "grade": rec.grade,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
