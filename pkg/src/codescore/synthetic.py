"""Grade-guided synthetic models and the deduplicated model grid.

A synthetic model starts from a real model's outputs and replaces a fixed
share of its worst-rated snippets with the best-rated snippet available for
the problem among the original models (or the reverse, for worsened models).
Snippet quality is the aggregated human grade.  Problems whose base snippet
already holds the extreme grade are skipped and do not count toward the
replacement quota; replacement stops after ``round(X * N / 100)`` snippets
(half-up) or when no replaceable snippet remains.

Every synthetic candidate keeps a record of which original model it came
from, so human scoring of synthetic models inherits the source snippet's
grade.
"""

from __future__ import annotations

from dataclasses import dataclass

from codescore.corpus import CandidateSet, ValidationError
from codescore.grades import AggregatedGrades

DEFAULT_PROPORTIONS = (1, 3, 5, 10, 15, 20, 25, 30)
DIRECTIONS = ("improve", "worsen")


@dataclass(frozen=True)
class SyntheticSpec:
    base_model_id: str
    direction: str
    proportion: float

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")
        if self.proportion < 0:
            raise ValueError("proportion must be non-negative")

    @property
    def model_id(self) -> str:
        prop = self.proportion
        text = str(int(prop)) if float(prop).is_integer() else str(prop)
        return f"{self.base_model_id}_{self.direction}{text}"


def _round_half_up(value: float) -> int:
    return int(value + 0.5)


def make_synthetic(
    base: CandidateSet,
    all_models: list[CandidateSet],
    grades: AggregatedGrades,
    spec: SyntheticSpec,
) -> CandidateSet:
    problem_ids = list(base.candidates)
    grades.require(
        (pid, model.model_id) for model in all_models for pid in problem_ids
    )
    if base.model_id not in {model.model_id for model in all_models}:
        raise ValidationError(f"base model {base.model_id!r} not among the originals")

    improve = spec.direction == "improve"
    base_grade = {pid: grades.grades[(pid, base.model_id)] for pid in problem_ids}
    # worst-first for improvement, best-first for worsening; ties by id
    order = sorted(
        problem_ids,
        key=lambda pid: (base_grade[pid] if improve else -base_grade[pid], pid),
    )
    quota = _round_half_up(spec.proportion * len(problem_ids) / 100.0)

    by_id = sorted(all_models, key=lambda model: model.model_id)
    candidates = dict(base.candidates)
    sources = {pid: base.model_id for pid in problem_ids}
    replaced = 0
    for pid in order:
        if replaced >= quota:
            break
        # strict comparison over id-sorted models: grade ties go to the
        # lexicographically smallest model id
        extreme = by_id[0]
        extreme_grade = grades.grades[(pid, extreme.model_id)]
        for model in by_id[1:]:
            grade = grades.grades[(pid, model.model_id)]
            if (improve and grade > extreme_grade) or (
                not improve and grade < extreme_grade
            ):
                extreme, extreme_grade = model, grade
        if extreme_grade == base_grade[pid]:
            continue  # base already holds the extreme grade for this problem
        candidates[pid] = extreme.candidates[pid]
        sources[pid] = extreme.model_id
        replaced += 1
    return CandidateSet(
        model_id=spec.model_id, candidates=candidates, sources=sources
    )


def extend_grades(
    models: list[CandidateSet], grades: AggregatedGrades
) -> AggregatedGrades:
    """Aggregated grades augmented with entries for synthetic models: each
    synthetic snippet inherits the grade of the original snippet it came
    from, so human scoring works on reloaded candidate files too."""
    table = dict(grades.grades)
    for model in models:
        if model.sources is None:
            continue
        for pid, source in model.sources.items():
            table[(pid, model.model_id)] = grades.grades[(pid, source)]
    return AggregatedGrades(grades=table, grader_weights=grades.grader_weights)


def build_grid(
    original_models: list[CandidateSet],
    grades: AggregatedGrades,
    proportions: tuple[float, ...] = DEFAULT_PROPORTIONS,
    deduplicate: bool = True,
) -> list[CandidateSet]:
    """Originals plus every (base, direction, proportion) synthetic; models
    with fully identical outputs are collapsed, originals kept preferentially.
    """
    if len(original_models) < 2:
        raise ValidationError("need at least two original models")
    grid = list(original_models)
    for base in original_models:
        for direction in DIRECTIONS:
            for proportion in sorted(proportions):
                spec = SyntheticSpec(base.model_id, direction, proportion)
                grid.append(make_synthetic(base, original_models, grades, spec))
    if not deduplicate:
        return grid
    seen: dict[tuple, CandidateSet] = {}
    unique = []
    for model in grid:
        key = tuple(sorted(model.candidates.items()))
        if key not in seen:
            seen[key] = model
            unique.append(model)
    return unique
