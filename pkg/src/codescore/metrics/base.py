"""Corpus scorer interface shared by every metric.

A scorer reduces each (references, candidate) pair to a fixed-width vector
of sufficient statistics, and turns column sums of any subset of those rows
back into a corpus score on the 0-100 scale.  Bootstrap resampling then
never re-tokenizes or re-parses anything: a resample is a row selection and
a re-aggregation, which also keeps corpus-native metrics (BLEU-style
micro-averages) honest under resampling.

Row order always follows corpus problem order, which fixes the summation
order of floating-point totals: results are identical no matter how callers
parallelize.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from codescore.corpus import CandidateSet, EvaluationCorpus, ValidationError


@dataclass(frozen=True)
class MetricScore:
    name: str
    value: float
    per_snippet: tuple[float, ...] | None = None

    def __post_init__(self):
        if not (0.0 <= self.value <= 100.0 + 1e-9):
            raise ValueError(f"{self.name} score {self.value} outside [0, 100]")


class CorpusScorer:
    """Base class; subclasses set ``name`` and implement the two hooks."""

    name: str = ""
    has_per_snippet: bool = True
    refs_policy: str = "max"

    def references_of(self, problem) -> tuple[str, ...]:
        return select_references(problem.references, self.refs_policy)

    def snippet_stats(
        self, corpus: EvaluationCorpus, candidates: CandidateSet
    ) -> np.ndarray:
        """(n_problems, k) float64 matrix of per-snippet sufficient stats."""
        raise NotImplementedError

    def score_totals(self, totals: np.ndarray) -> np.ndarray:
        """Map (batch, k) column sums to (batch,) scores on the 0-100 scale."""
        raise NotImplementedError

    def per_snippet_values(self, stats: np.ndarray) -> tuple[float, ...] | None:
        if not self.has_per_snippet:
            return None
        return tuple(float(v) for v in self.score_totals(stats))

    def score(self, corpus: EvaluationCorpus, candidates: CandidateSet) -> MetricScore:
        stats = self.snippet_stats(corpus, candidates)
        totals = stats.sum(axis=0, keepdims=True)
        value = float(self.score_totals(totals)[0])
        return MetricScore(
            name=self.name,
            value=value,
            per_snippet=self.per_snippet_values(stats),
        )


class PerSnippetScorer(CorpusScorer):
    """Scorer whose corpus value is the mean of per-snippet scores.

    Rows are ``[score_0_100, 1.0]``; subclasses implement ``snippet_score``.
    """

    def snippet_score(self, references: tuple[str, ...], candidate: str) -> float:
        raise NotImplementedError

    def snippet_stats(self, corpus, candidates) -> np.ndarray:
        rows = []
        for problem in corpus:
            snippet = candidates.candidates[problem.problem_id]
            rows.append([self.snippet_score(self.references_of(problem), snippet), 1.0])
        return np.asarray(rows, dtype=np.float64)

    def score_totals(self, totals: np.ndarray) -> np.ndarray:
        totals = np.atleast_2d(totals)
        counts = totals[:, 1]
        out = np.zeros(len(totals))
        np.divide(totals[:, 0], counts, out=out, where=counts > 0)
        return out


def check_coverage(corpus: EvaluationCorpus, candidates: CandidateSet) -> None:
    if set(candidates.candidates) != set(corpus.problem_ids):
        raise ValidationError(
            f"candidate set {candidates.model_id!r} does not cover the corpus"
        )


def select_references(
    references: tuple[str, ...], policy: str
) -> tuple[str, ...]:
    """Apply the multi-reference policy ("max" keeps all, "first" keeps one)."""
    return references if policy == "max" else references[:1]
