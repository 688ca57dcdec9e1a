"""Paired bootstrap resampling, confidence intervals, and verdicts.

The resampling unit is the problem: each bootstrap sample draws problem ids
with replacement, the same draw for both systems, and recomputes both corpus
scores from the resampled sufficient statistics (so corpus-native metrics
are recomputed from resampled counts, not averaged snippet scores).  A
system wins a sample when its score is strictly larger; exact ties count
toward neither side.

Randomness comes from numpy's PCG64 generator.  The index row of sample
``i`` is seeded by ``SeedSequence([seed, i])``, so results are a pure
function of (inputs, seed) no matter how samples are scheduled or batched
across workers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from codescore.corpus import CandidateSet, EvaluationCorpus
from codescore.metrics.base import CorpusScorer

_CHUNK_ROWS = 2_000_000  # cap on index-matrix cells expanded at once


class Verdict(enum.Enum):
    A_BETTER = "A_BETTER"
    B_BETTER = "B_BETTER"
    NOT_SIGNIFICANT = "NOT_SIGNIFICANT"


@dataclass(frozen=True)
class BootstrapResult:
    n_samples: int
    win_rate_a: float
    win_rate_b: float
    tie_rate: float
    point_a: float
    point_b: float
    seed: int

    def __post_init__(self):
        total = self.win_rate_a + self.win_rate_b + self.tie_rate
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"rates sum to {total}, not 1")


@dataclass(frozen=True)
class ComparisonVerdict:
    verdict: Verdict
    threshold: float


@dataclass(frozen=True)
class ConfidenceInterval:
    point: float
    plus: float
    minus: float

    def __post_init__(self):
        if self.plus < -1e-9 or self.minus < -1e-9:
            raise ValueError("interval arms must be non-negative")


def resample_indices(n_problems: int, n_samples: int, seed: int) -> np.ndarray:
    """(n_samples, n_problems) problem indices, drawn with replacement."""
    if n_samples < 1:
        raise ValueError("need at least one bootstrap sample")
    if n_problems < 1:
        raise ValueError("need at least one problem")
    rows = np.empty((n_samples, n_problems), dtype=np.intp)
    for i in range(n_samples):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, i])))
        rows[i] = rng.integers(0, n_problems, size=n_problems)
    return rows


def resampled_scores(
    scorer: CorpusScorer, stats: np.ndarray, indices: np.ndarray
) -> np.ndarray:
    """Corpus score of every bootstrap sample, from precomputed stats."""
    n_samples, n_problems = indices.shape
    chunk = max(1, _CHUNK_ROWS // max(1, n_problems))
    scores = np.empty(n_samples, dtype=np.float64)
    for start in range(0, n_samples, chunk):
        block = indices[start : start + chunk]
        totals = stats[block].sum(axis=1)
        scores[start : start + len(block)] = scorer.score_totals(totals)
    return scores


def paired_bootstrap(
    corpus: EvaluationCorpus,
    candidates_a: CandidateSet,
    candidates_b: CandidateSet,
    scorer: CorpusScorer,
    n: int = 1000,
    seed: int = 0,
) -> BootstrapResult:
    stats_a = scorer.snippet_stats(corpus, candidates_a)
    stats_b = scorer.snippet_stats(corpus, candidates_b)
    point_a = float(scorer.score_totals(stats_a.sum(axis=0, keepdims=True))[0])
    point_b = float(scorer.score_totals(stats_b.sum(axis=0, keepdims=True))[0])
    indices = resample_indices(len(corpus), n, seed)
    scores_a = resampled_scores(scorer, stats_a, indices)
    scores_b = resampled_scores(scorer, stats_b, indices)
    return tally(scores_a, scores_b, point_a, point_b, seed)


def tally(
    scores_a: np.ndarray,
    scores_b: np.ndarray,
    point_a: float,
    point_b: float,
    seed: int,
) -> BootstrapResult:
    n = len(scores_a)
    wins_a = int((scores_a > scores_b).sum())
    wins_b = int((scores_b > scores_a).sum())
    return BootstrapResult(
        n_samples=n,
        win_rate_a=wins_a / n,
        win_rate_b=wins_b / n,
        tie_rate=(n - wins_a - wins_b) / n,
        point_a=point_a,
        point_b=point_b,
        seed=seed,
    )


def verdict(result: BootstrapResult, threshold: float = 0.95) -> ComparisonVerdict:
    """One-sided per direction: a side must win at least ``threshold`` of the
    samples; ties support neither side."""
    if not 0.5 < threshold <= 1.0:
        raise ValueError("threshold must be in (0.5, 1]")
    if result.win_rate_a >= threshold:
        decision = Verdict.A_BETTER
    elif result.win_rate_b >= threshold:
        decision = Verdict.B_BETTER
    else:
        decision = Verdict.NOT_SIGNIFICANT
    return ComparisonVerdict(verdict=decision, threshold=threshold)


def confidence_interval(
    corpus: EvaluationCorpus,
    candidates: CandidateSet,
    scorer: CorpusScorer,
    n: int = 1000,
    seed: int = 0,
) -> ConfidenceInterval:
    """95% percentile interval over resampled corpus scores."""
    stats = scorer.snippet_stats(corpus, candidates)
    point = float(scorer.score_totals(stats.sum(axis=0, keepdims=True))[0])
    indices = resample_indices(len(corpus), n, seed)
    scores = resampled_scores(scorer, stats, indices)
    return interval_from_scores(point, scores)


def interval_from_scores(point: float, scores: np.ndarray) -> ConfidenceInterval:
    low, high = np.percentile(scores, [2.5, 97.5], method="linear")
    return ConfidenceInterval(
        point=point,
        plus=max(0.0, float(high) - point),
        minus=max(0.0, point - float(low)),
    )
