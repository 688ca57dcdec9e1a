"""ChrF: character k-gram F-score, tokenization-free.

All whitespace is removed, then precision and recall are computed for
character k-grams with ``1 <= k <= max_k`` (default 6), arithmetically
averaged over the k for which either side has k-grams at all, and combined
with beta = 2 (recall weighted twice as much as precision).  k-grams longer
than the remaining string contribute nothing rather than zeros, so identical
strings score exactly 100 regardless of length.
"""

from __future__ import annotations

import re
from collections import Counter

import numpy as np

from codescore.metrics.base import CorpusScorer, check_coverage
from codescore.metrics.config import MetricConfig

_WHITESPACE = re.compile(r"\s+")


def _char_ngrams(text: str, k: int) -> Counter:
    return Counter(text[i : i + k] for i in range(len(text) - k + 1))


def chrf_precision_recall(reference: str, candidate: str, max_k: int) -> tuple[float, float]:
    """Averaged character k-gram precision and recall of one pair."""
    ref = _WHITESPACE.sub("", reference)
    hyp = _WHITESPACE.sub("", candidate)
    precisions, recalls = [], []
    for k in range(1, max_k + 1):
        ref_grams = _char_ngrams(ref, k)
        hyp_grams = _char_ngrams(hyp, k)
        if not ref_grams and not hyp_grams:
            continue
        overlap = sum(min(count, ref_grams[gram]) for gram, count in hyp_grams.items())
        precisions.append(overlap / sum(hyp_grams.values()) if hyp_grams else 0.0)
        recalls.append(overlap / sum(ref_grams.values()) if ref_grams else 0.0)
    if not precisions:
        # both strings empty: identical by definition
        return 1.0, 1.0
    return sum(precisions) / len(precisions), sum(recalls) / len(recalls)


def _fscore(precision: float, recall: float, beta: float) -> float:
    if precision == 0.0 and recall == 0.0:
        return 0.0
    b2 = beta * beta
    return (1 + b2) * precision * recall / (recall + b2 * precision)


class ChrfScorer(CorpusScorer):
    name = "chrf"

    def __init__(self, config: MetricConfig):
        self.max_k = config.chrf.max_k
        self.beta = config.chrf.beta
        self.micro = config.aggregation == "micro"
        self.refs_policy = config.multi_reference

    def _best_pr(self, references, candidate) -> tuple[float, float]:
        best = (0.0, 0.0)
        best_f = -1.0
        for ref in references:
            pr = chrf_precision_recall(ref, candidate, self.max_k)
            f = _fscore(*pr, self.beta)
            if f > best_f:
                best_f = f
                best = pr
        return best

    def snippet_stats(self, corpus, candidates) -> np.ndarray:
        check_coverage(corpus, candidates)
        rows = []
        for problem in corpus:
            p, r = self._best_pr(
                self.references_of(problem), candidates.candidates[problem.problem_id]
            )
            if self.micro:
                rows.append([p, r, 1.0])
            else:
                rows.append([100.0 * _fscore(p, r, self.beta), 1.0])
        return np.asarray(rows, dtype=np.float64)

    def score_totals(self, totals: np.ndarray) -> np.ndarray:
        totals = np.atleast_2d(totals)
        counts = np.where(totals[:, -1] > 0, totals[:, -1], 1.0)
        if not self.micro:
            return totals[:, 0] / counts
        precision = totals[:, 0] / counts
        recall = totals[:, 1] / counts
        return 100.0 * np.asarray(
            [_fscore(p, r, self.beta) for p, r in zip(precision, recall)]
        )

    def per_snippet_values(self, stats: np.ndarray):
        if self.micro:
            return tuple(100.0 * _fscore(p, r, self.beta) for p, r, _ in stats)
        return tuple(float(v) for v in stats[:, 0])
