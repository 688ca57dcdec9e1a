"""Metric registry: every corpus scorer by its command-line name."""

from __future__ import annotations

from codescore.grades import AggregatedGrades
from codescore.metrics.base import CorpusScorer, MetricScore
from codescore.metrics.bleu import (
    CorpusBleuScorer,
    SentenceBleuScorer,
    WeightedUnigramBleuScorer,
)
from codescore.metrics.chrf import ChrfScorer
from codescore.metrics.codebleu import CodeBleuScorer
from codescore.metrics.config import (
    CONFIG_ENV_VAR,
    ConfigError,
    MetricConfig,
    default_config,
    load_config,
)
from codescore.metrics.human import HumanScorer
from codescore.metrics.meteor import MeteorScorer
from codescore.metrics.rouge import RougeLScorer
from codescore.metrics.ruby import RubyScorer

_AUTOMATIC = {
    "bleu": CorpusBleuScorer,
    "sentence-bleu": SentenceBleuScorer,
    "bleu-weighted": WeightedUnigramBleuScorer,
    "rouge-l": RougeLScorer,
    "chrf": ChrfScorer,
    "meteor": MeteorScorer,
    "codebleu": CodeBleuScorer,
    "ruby": RubyScorer,
}

METRIC_NAMES = tuple(_AUTOMATIC) + ("human",)

# the six report metrics, in report order
REPORT_METRICS = ("bleu", "rouge-l", "chrf", "meteor", "ruby", "codebleu")


def get_scorer(
    name: str,
    config: MetricConfig | None = None,
    grades: AggregatedGrades | None = None,
) -> CorpusScorer:
    if config is None:
        config = default_config()
    if name == "human":
        if grades is None:
            raise ValueError("the human metric needs aggregated grades")
        return HumanScorer(grades)
    try:
        cls = _AUTOMATIC[name]
    except KeyError:
        raise ValueError(
            f"unknown metric {name!r}; choose from {', '.join(METRIC_NAMES)}"
        ) from None
    return cls(config)


__all__ = [
    "CONFIG_ENV_VAR",
    "ConfigError",
    "CorpusScorer",
    "METRIC_NAMES",
    "MetricConfig",
    "MetricScore",
    "REPORT_METRICS",
    "default_config",
    "get_scorer",
    "load_config",
]
