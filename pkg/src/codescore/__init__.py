"""Scoring, significance testing, and human-agreement analysis for code generation output."""

from codescore.corpus import (
    CandidateSet,
    DataError,
    EvaluationCorpus,
    GradeRecord,
    ParseError,
    Problem,
    ValidationError,
    load_candidates,
    load_corpus,
    load_grades,
)
from codescore.metrics import MetricScore, get_scorer
from codescore.stats import (
    BootstrapResult,
    ComparisonVerdict,
    ConfidenceInterval,
    Verdict,
    confidence_interval,
    paired_bootstrap,
    verdict,
)

__version__ = "0.1.0"

__all__ = [
    "BootstrapResult",
    "CandidateSet",
    "ComparisonVerdict",
    "ConfidenceInterval",
    "DataError",
    "EvaluationCorpus",
    "GradeRecord",
    "MetricScore",
    "ParseError",
    "Problem",
    "ValidationError",
    "Verdict",
    "confidence_interval",
    "get_scorer",
    "load_candidates",
    "load_corpus",
    "load_grades",
    "paired_bootstrap",
    "verdict",
]
