"""ROUGE-L: longest-common-subsequence F-score over tokens.

Per snippet, ``P = LCS/len(hyp)``, ``R = LCS/len(ref)`` and the two are
combined as an F-score with configurable beta (default 1, equal weight).
With several references the snippet takes the best-scoring one.  The corpus
value is the mean of snippet scores by default; micro aggregation (F-score
of averaged precision/recall) is available via the config.
"""

from __future__ import annotations

import numpy as np

from codescore.metrics.base import CorpusScorer, check_coverage
from codescore.metrics.config import MetricConfig
from codescore.tokens import tokenize_texts


def lcs_length(a: list[str], b: list[str]) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = [0] * (len(b) + 1)
    for item_a in a:
        current = [0] * (len(b) + 1)
        for j, item_b in enumerate(b, start=1):
            if item_a == item_b:
                current[j] = previous[j - 1] + 1
            else:
                current[j] = max(previous[j], current[j - 1])
        previous = current
    return previous[len(b)]


def _fscore(precision: float, recall: float, beta: float) -> float:
    if precision == 0.0 and recall == 0.0:
        return 0.0
    b2 = beta * beta
    return (1 + b2) * precision * recall / (recall + b2 * precision)


class RougeLScorer(CorpusScorer):
    name = "rouge-l"

    def __init__(self, config: MetricConfig):
        self.beta = config.rouge.beta
        self.micro = config.aggregation == "micro"
        self.refs_policy = config.multi_reference

    def _best_pr(self, references, candidate) -> tuple[float, float]:
        hyp = tokenize_texts(candidate)
        best = (0.0, 0.0)
        best_f = -1.0
        for ref_text in references:
            ref = tokenize_texts(ref_text)
            if not hyp or not ref:
                pr = (0.0, 0.0)
            else:
                lcs = lcs_length(hyp, ref)
                pr = (lcs / len(hyp), lcs / len(ref))
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
            return tuple(
                100.0 * _fscore(p, r, self.beta) for p, r, _ in stats
            )
        return tuple(float(v) for v in stats[:, 0])
