"""Human corpus score: 25 times the mean aggregated grade of a model."""

from __future__ import annotations

import numpy as np

from codescore.corpus import ValidationError
from codescore.grades import AggregatedGrades
from codescore.metrics.base import CorpusScorer, check_coverage

GRADE_SCALE = 25.0  # maps the 0-4 grade scale onto 0-100


class HumanScorer(CorpusScorer):
    name = "human"

    def __init__(self, grades: AggregatedGrades):
        self.grades = grades

    def snippet_stats(self, corpus, candidates) -> np.ndarray:
        check_coverage(corpus, candidates)
        rows = []
        for problem in corpus:
            source = candidates.grade_source(problem.problem_id)
            key = (problem.problem_id, source)
            if key not in self.grades.grades:
                raise ValidationError(
                    f"no aggregated grade for problem {problem.problem_id!r}, "
                    f"model {source!r}"
                )
            rows.append([self.grades.grades[key], 1.0])
        return np.asarray(rows, dtype=np.float64)

    def score_totals(self, totals: np.ndarray) -> np.ndarray:
        totals = np.atleast_2d(totals)
        counts = np.where(totals[:, 1] > 0, totals[:, 1], 1.0)
        return GRADE_SCALE * totals[:, 0] / counts

    def per_snippet_values(self, stats: np.ndarray):
        return tuple(GRADE_SCALE * float(g) for g in stats[:, 0])
