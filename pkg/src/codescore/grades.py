"""Aggregation of raw per-grader scores into one ground-truth grade per snippet.

The default strategy is an iterative reliability weighting: grader weights
start equal, aggregates are weight-averaged per snippet, each grader's
weight is then re-estimated from how closely they track the aggregates
(inverse mean squared deviation), and the loop repeats to convergence.
Graders systematically at odds with the crowd are damped; with equal
disagreement the scheme reduces to the arithmetic mean, which is also
available directly as the ``mean`` method.

Aggregates are real-valued on the 0-4 scale (downstream scoring multiplies
means by 25, so rounding would lose information) and always lie inside the
convex hull of the raw grades of their snippet.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from codescore.corpus import GradeRecord, ParseError, ValidationError

METHODS = ("reliability_weighted", "mean")

_EPSILON = 1e-6  # keeps weights finite for perfectly agreeing graders


@dataclass(frozen=True)
class AggregatedGrades:
    grades: Mapping[tuple[str, str], float]
    grader_weights: Mapping[str, float]

    def require(
        self, pairs: Iterable[tuple[str, str]]
    ) -> None:
        missing = [pair for pair in pairs if pair not in self.grades]
        if missing:
            listing = ", ".join(f"({p}, {m})" for p, m in sorted(missing)[:5])
            raise ValidationError(
                f"{len(missing)} graded pair(s) missing, e.g. {listing}"
            )


def aggregate_grades(
    records: Iterable[GradeRecord],
    method: str = "reliability_weighted",
    tolerance: float = 1e-9,
    max_iterations: int = 100,
) -> AggregatedGrades:
    records = list(records)
    if method not in METHODS:
        raise ValueError(f"unknown aggregation method {method!r}")
    if not records:
        raise ValidationError("no grade records to aggregate")
    by_pair: dict[tuple[str, str], list[GradeRecord]] = {}
    by_grader: dict[str, list[GradeRecord]] = {}
    for rec in records:
        by_pair.setdefault((rec.problem_id, rec.model_id), []).append(rec)
        by_grader.setdefault(rec.grader_id, []).append(rec)

    weights = {grader: 1.0 for grader in by_grader}
    aggregates = _weighted_aggregates(by_pair, weights)
    if method == "mean":
        return AggregatedGrades(grades=aggregates, grader_weights=weights)

    for _ in range(max_iterations):
        weights = _reliability_weights(by_grader, aggregates)
        updated = _weighted_aggregates(by_pair, weights)
        delta = max(
            abs(updated[key] - aggregates[key]) for key in updated
        )
        aggregates = updated
        if delta <= tolerance:
            break
    return AggregatedGrades(grades=aggregates, grader_weights=weights)


def _weighted_aggregates(
    by_pair: dict[tuple[str, str], list[GradeRecord]],
    weights: dict[str, float],
) -> dict[tuple[str, str], float]:
    aggregates = {}
    for pair, recs in by_pair.items():
        mass = sum(weights[rec.grader_id] for rec in recs)
        aggregates[pair] = (
            sum(weights[rec.grader_id] * rec.grade for rec in recs) / mass
        )
    return aggregates


def _reliability_weights(
    by_grader: dict[str, list[GradeRecord]],
    aggregates: dict[tuple[str, str], float],
) -> dict[str, float]:
    weights = {}
    for grader, recs in by_grader.items():
        mse = sum(
            (rec.grade - aggregates[(rec.problem_id, rec.model_id)]) ** 2
            for rec in recs
        ) / len(recs)
        weights[grader] = 1.0 / (mse + _EPSILON)
    # normalize to mean 1 so reported weights are comparable across runs
    scale = len(weights) / sum(weights.values())
    return {grader: w * scale for grader, w in weights.items()}


def write_aggregated(aggregated: AggregatedGrades, path: str | Path) -> None:
    """One record per (problem, model) plus a leading weights-metadata line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            json.dumps(
                {"grader_weights": dict(sorted(aggregated.grader_weights.items()))}
            )
            + "\n"
        )
        for (pid, model), grade in sorted(aggregated.grades.items()):
            fh.write(
                json.dumps(
                    {"problem_id": pid, "model_id": model, "grade": grade},
                    ensure_ascii=False,
                )
                + "\n"
            )


def load_aggregated(path: str | Path) -> AggregatedGrades:
    grades: dict[tuple[str, str], float] = {}
    weights: dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(path, lineno, f"invalid JSON: {exc.msg}") from exc
            if "grader_weights" in record:
                weights.update(record["grader_weights"])
                continue
            for name in ("problem_id", "model_id", "grade"):
                if name not in record:
                    raise ParseError(path, lineno, f"missing field {name!r}")
            grade = float(record["grade"])
            if not 0.0 <= grade <= 4.0:
                raise ParseError(path, lineno, f"grade {grade} outside [0, 4]")
            grades[(str(record["problem_id"]), record["model_id"])] = grade
    if not grades:
        raise ValidationError(f"{path}: no aggregated grades")
    return AggregatedGrades(grades=grades, grader_weights=weights)
