"""Metric configuration: defaults plus optional JSON override file.

Every knob of every metric lives here.  The shipped defaults are the
settings the report tables assume: uniform 4-gram weights for BLEU,
character k-grams up to 6 with beta=2 for ChrF, beta=1 for ROUGE-L,
component weights (0.1, 0.1, 0.4, 0.4) and keyword weight 5 for the
composite code metric.  The alignment-based metric's parameters are read
from the checked-in ``data/meteor_params.json`` resource.

A config file is a JSON object whose top-level keys are the section names
(``bleu``, ``rouge``, ``chrf``, ``meteor``, ``codebleu``, ``general``);
unknown keys are rejected.  The ``CODESCORE_CONFIG`` environment variable
names a default config file for the command-line tools.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

CONFIG_ENV_VAR = "CODESCORE_CONFIG"

SMOOTHING_MODES = ("none", "floor", "add-k")
AGGREGATIONS = ("macro", "micro")
MULTI_REFERENCE_POLICIES = ("max", "first")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class BleuConfig:
    max_n: int = 4
    weights: tuple[float, ...] = (0.25, 0.25, 0.25, 0.25)
    # sentence-mode smoothing; "floor" halves the numerator floor for each
    # successive zero-match order
    smoothing: str = "floor"
    floor_value: float = 1.0
    add_k: float = 1.0

    def validate(self) -> None:
        if self.max_n < 1:
            raise ConfigError("bleu.max_n must be >= 1")
        if len(self.weights) != self.max_n:
            raise ConfigError("bleu.weights must have max_n entries")
        if any(w < 0 for w in self.weights):
            raise ConfigError("bleu.weights must be non-negative")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise ConfigError("bleu.weights must sum to 1")
        if self.smoothing not in SMOOTHING_MODES:
            raise ConfigError(f"bleu.smoothing must be one of {SMOOTHING_MODES}")


@dataclass(frozen=True)
class RougeConfig:
    beta: float = 1.0

    def validate(self) -> None:
        if self.beta < 0:
            raise ConfigError("rouge.beta must be non-negative")


@dataclass(frozen=True)
class ChrfConfig:
    max_k: int = 6
    beta: float = 2.0

    def validate(self) -> None:
        if self.max_k < 1:
            raise ConfigError("chrf.max_k must be >= 1")
        if self.beta < 0:
            raise ConfigError("chrf.beta must be non-negative")


@dataclass(frozen=True)
class MeteorConfig:
    alpha: float = 0.85
    beta: float = 0.2
    gamma: float = 0.6
    delta: float = 0.75
    weight_exact: float = 1.0
    weight_stem: float = 0.6
    enable_stem: bool = True
    beam_width: int = 40
    # function words get weight (1 - delta) against content words; code
    # tokens are all content words unless a word list is configured
    function_words: tuple[str, ...] = ()

    def validate(self) -> None:
        for name in ("alpha", "beta", "gamma", "delta"):
            if getattr(self, name) < 0:
                raise ConfigError(f"meteor.{name} must be non-negative")
        if self.weight_exact < 0 or self.weight_stem < 0:
            raise ConfigError("meteor matcher weights must be non-negative")
        if self.beam_width < 1:
            raise ConfigError("meteor.beam_width must be >= 1")


@dataclass(frozen=True)
class CodeBleuConfig:
    weights: tuple[float, float, float, float] = (0.1, 0.1, 0.4, 0.4)
    keyword_weight: float = 5.0

    def validate(self) -> None:
        if len(self.weights) != 4 or any(w < 0 for w in self.weights):
            raise ConfigError("codebleu.weights must be 4 non-negative numbers")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise ConfigError("codebleu.weights must sum to 1")
        if self.keyword_weight < 0:
            raise ConfigError("codebleu.keyword_weight must be non-negative")


@dataclass(frozen=True)
class MetricConfig:
    bleu: BleuConfig = field(default_factory=BleuConfig)
    rouge: RougeConfig = field(default_factory=RougeConfig)
    chrf: ChrfConfig = field(default_factory=ChrfConfig)
    meteor: MeteorConfig = field(default_factory=MeteorConfig)
    codebleu: CodeBleuConfig = field(default_factory=CodeBleuConfig)
    # corpus aggregation for per-snippet metrics: mean of snippet scores
    # ("macro", the default) or F-score over averaged components ("micro")
    aggregation: str = "macro"
    # "max": per-snippet metrics take the best reference (n-gram clipping is
    # always native multi-reference); "first": only the first reference counts
    multi_reference: str = "max"

    def validate(self) -> None:
        self.bleu.validate()
        self.rouge.validate()
        self.chrf.validate()
        self.meteor.validate()
        self.codebleu.validate()
        if self.aggregation not in AGGREGATIONS:
            raise ConfigError(f"aggregation must be one of {AGGREGATIONS}")
        if self.multi_reference not in MULTI_REFERENCE_POLICIES:
            raise ConfigError(
                f"multi_reference must be one of {MULTI_REFERENCE_POLICIES}"
            )


_SECTIONS = {
    "bleu": BleuConfig,
    "rouge": RougeConfig,
    "chrf": ChrfConfig,
    "meteor": MeteorConfig,
    "codebleu": CodeBleuConfig,
}
_TUPLE_FIELDS = {"weights", "function_words"}


def default_config() -> MetricConfig:
    with resources.files("codescore.data").joinpath("meteor_params.json").open() as fh:
        meteor_params = json.load(fh)
    config = MetricConfig(meteor=MeteorConfig(**_tupled(meteor_params)))
    config.validate()
    return config


def _tupled(section: dict) -> dict:
    return {
        key: tuple(value) if key in _TUPLE_FIELDS else value
        for key, value in section.items()
    }


def load_config(path: str | Path) -> MetricConfig:
    """Load a JSON config file on top of the defaults."""
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    config = default_config()
    for section, values in raw.items():
        if section == "general":
            if not isinstance(values, dict):
                raise ConfigError(f"{path}: section {section!r} must be an object")
            try:
                config = replace(config, **values)
            except TypeError as exc:
                raise ConfigError(f"{path}: bad key in section 'general': {exc}") from exc
            continue
        cls = _SECTIONS.get(section)
        if cls is None:
            raise ConfigError(f"{path}: unknown config section {section!r}")
        if not isinstance(values, dict):
            raise ConfigError(f"{path}: section {section!r} must be an object")
        current = getattr(config, section)
        try:
            updated = replace(current, **_tupled(values))
        except TypeError as exc:
            raise ConfigError(f"{path}: bad key in section {section!r}: {exc}") from exc
        config = replace(config, **{section: updated})
    config.validate()
    return config
