"""Shared fixtures: tiny corpora builders and the 50-snippet valid corpus."""

from __future__ import annotations

import pytest

from codescore.corpus import CandidateSet, EvaluationCorpus, Problem

# Fifty small, varied, syntactically valid snippets: assignments, calls,
# loops, defs, comprehensions, classes.  Deterministic by construction.
_TEMPLATES = [
    "x{i} = {i}",
    "total_{i} = x{i} + {i} * 2",
    "items_{i} = [n for n in range({i}) if n % 2 == 0]",
    "def fn_{i}(a, b={i}):\n    result = a + b\n    return result",
    "for k_{i} in range({i} + 1):\n    acc_{i} = k_{i} * k_{i}",
    "name_{i} = 'snippet-{i}'.upper()",
    "if x{i} > {i}:\n    y{i} = x{i} - 1\nelse:\n    y{i} = 0",
    "data_{i} = {{'k{i}': {i}, 'v{i}': [{i}, {i}]}}",
    "class Thing{i}:\n    def __init__(self):\n        self.value = {i}",
    "pairs_{i} = sorted(zip(range({i}), range({i})), key=lambda p: p[1])",
]


def make_snippets(count: int = 50) -> list[str]:
    return [_TEMPLATES[i % len(_TEMPLATES)].format(i=i) for i in range(count)]


def make_corpus(references: dict[str, list[str]], label: str = "test") -> EvaluationCorpus:
    problems = {
        pid: Problem(pid, f"intent for {pid}", tuple(refs))
        for pid, refs in references.items()
    }
    return EvaluationCorpus(problems=problems, dataset_label=label)


def make_candidates(model_id: str, snippets: dict[str, str]) -> CandidateSet:
    return CandidateSet(model_id=model_id, candidates=dict(snippets))


@pytest.fixture
def valid_corpus() -> EvaluationCorpus:
    snippets = make_snippets()
    return make_corpus({f"p{i:03d}": [snippet] for i, snippet in enumerate(snippets)})


@pytest.fixture
def identity_candidates(valid_corpus) -> CandidateSet:
    return make_candidates(
        "identity",
        {p.problem_id: p.references[0] for p in valid_corpus},
    )
