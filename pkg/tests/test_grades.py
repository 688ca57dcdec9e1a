"""Grade aggregation: trivial cases, reliability weighting, invariants."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codescore.corpus import GradeRecord, ValidationError
from codescore.grades import (
    AggregatedGrades,
    aggregate_grades,
    load_aggregated,
    write_aggregated,
)


def rec(pid, model, grader, grade):
    return GradeRecord(pid, model, grader, grade)


def test_unanimous_grades_aggregate_exactly():
    records = [rec("p1", "m", g, 3) for g in ("g1", "g2", "g3")]
    for method in ("mean", "reliability_weighted"):
        agg = aggregate_grades(records, method=method)
        assert agg.grades[("p1", "m")] == pytest.approx(3.0, abs=1e-12)


def test_single_grade_passes_through():
    agg = aggregate_grades([rec("p1", "m", "g1", 2)])
    assert agg.grades[("p1", "m")] == pytest.approx(2.0)


def test_mean_method_is_arithmetic_mean():
    records = [rec("p1", "m", "g1", 4), rec("p1", "m", "g2", 1)]
    agg = aggregate_grades(records, method="mean")
    assert agg.grades[("p1", "m")] == pytest.approx(2.5)


def _anticorrelated_fixture():
    """Graders g1, g2 track each other; g3 systematically disagrees."""
    records = []
    pattern = [4, 0, 4, 0, 3, 1]
    for i, majority in enumerate(pattern):
        pid = f"p{i}"
        records.append(rec(pid, "m", "g1", majority))
        records.append(rec(pid, "m", "g2", majority))
        records.append(rec(pid, "m", "g3", 4 - majority))
    # the pair under scrutiny: (4, 4, 0)
    records.append(rec("target", "m", "g1", 4))
    records.append(rec("target", "m", "g2", 4))
    records.append(rec("target", "m", "g3", 0))
    return records


def test_reliability_weighting_discounts_anticorrelated_grader():
    records = _anticorrelated_fixture()
    weighted = aggregate_grades(records, method="reliability_weighted")
    mean = aggregate_grades(records, method="mean")
    assert mean.grades[("target", "m")] == pytest.approx(8 / 3, abs=1e-9)
    assert weighted.grades[("target", "m")] > mean.grades[("target", "m")]
    assert weighted.grader_weights["g3"] < weighted.grader_weights["g1"]


def test_weights_equal_when_disagreement_symmetric():
    records = [
        rec("p1", "m", "g1", 4), rec("p1", "m", "g2", 0),
        rec("p2", "m", "g1", 0), rec("p2", "m", "g2", 4),
    ]
    agg = aggregate_grades(records, method="reliability_weighted")
    assert agg.grader_weights["g1"] == pytest.approx(agg.grader_weights["g2"])
    assert agg.grades[("p1", "m")] == pytest.approx(2.0, abs=1e-9)


def test_empty_records_error():
    with pytest.raises(ValidationError):
        aggregate_grades([])


def test_unknown_method_error():
    with pytest.raises(ValueError):
        aggregate_grades([rec("p", "m", "g", 1)], method="median")


def test_require_reports_missing_pairs():
    agg = aggregate_grades([rec("p1", "m1", "g1", 2)])
    with pytest.raises(ValidationError, match=r"\(p2, m1\)"):
        agg.require([("p1", "m1"), ("p2", "m1")])


grade_lists = st.lists(st.integers(0, 4), min_size=1, max_size=6)


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(st.sampled_from(["p1", "p2", "p3"]), grade_lists, min_size=1))
def test_aggregate_stays_in_convex_hull(data):
    records = [
        rec(pid, "m", f"g{k}", grade)
        for pid, grades in data.items()
        for k, grade in enumerate(grades)
    ]
    for method in ("mean", "reliability_weighted"):
        agg = aggregate_grades(records, method=method)
        for pid, grades in data.items():
            value = agg.grades[(pid, "m")]
            assert min(grades) - 1e-9 <= value <= max(grades) + 1e-9


@settings(max_examples=40, deadline=None)
@given(st.permutations(["g1", "g2", "g3"]))
def test_grader_relabeling_does_not_change_aggregates(perm):
    mapping = dict(zip(["g1", "g2", "g3"], perm))
    base = _anticorrelated_fixture()
    renamed = [
        rec(r.problem_id, r.model_id, mapping[r.grader_id], r.grade) for r in base
    ]
    a = aggregate_grades(base, method="reliability_weighted")
    b = aggregate_grades(renamed, method="reliability_weighted")
    for key, value in a.grades.items():
        assert b.grades[key] == pytest.approx(value, abs=1e-12)


def test_equal_reliability_reduces_to_mean():
    # every grader errs identically (symmetric pattern), so reliability
    # weighting must coincide with the mean within the convergence tolerance
    records = [
        rec("p1", "m", "g1", 4), rec("p1", "m", "g2", 0),
        rec("p2", "m", "g1", 0), rec("p2", "m", "g2", 4),
        rec("p3", "m", "g1", 2), rec("p3", "m", "g2", 2),
    ]
    weighted = aggregate_grades(records, method="reliability_weighted")
    mean = aggregate_grades(records, method="mean")
    for key in mean.grades:
        assert weighted.grades[key] == pytest.approx(mean.grades[key], abs=1e-9)


def test_round_trip_file(tmp_path):
    agg = aggregate_grades(_anticorrelated_fixture())
    path = tmp_path / "agg.jsonl"
    write_aggregated(agg, path)
    loaded = load_aggregated(path)
    assert set(loaded.grades) == set(agg.grades)
    for key, value in agg.grades.items():
        assert loaded.grades[key] == pytest.approx(value, abs=1e-12)
    assert loaded.grader_weights.keys() == agg.grader_weights.keys()


def test_load_rejects_out_of_range(tmp_path):
    path = tmp_path / "agg.jsonl"
    path.write_text('{"problem_id": "p", "model_id": "m", "grade": 7.5}\n')
    with pytest.raises(Exception):
        load_aggregated(path)
