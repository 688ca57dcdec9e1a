"""Binned pairwise comparison of metric verdicts against human verdicts.

Every unordered pair of models in the grid gets two significance verdicts
from the paired bootstrap: one per metric, one from the aggregated human
grades (the human verdict is computed once per pair and reused across
metrics).  A pair whose metric verdict is significant lands in a bin chosen
by the absolute corpus-score difference; pairs the metric cannot
distinguish land in the NS bin.  Disagreements are classified as

* TYPE_I_EQUIV:    metric significant, humans see no difference;
* TYPE_I_REVERSED: both significant, opposite directions;
* TYPE_II:         metric NS, humans see a difference;
* MATCH:           otherwise.

Two report views exist: the significance view (per bin, how many pairs were
significant vs NS) and the mismatch view (per bin, mismatches over pairs,
plus a pooled total mismatch rate).
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from codescore.corpus import CandidateSet, EvaluationCorpus, ValidationError
from codescore.grades import AggregatedGrades
from codescore.metrics.base import CorpusScorer
from codescore.metrics.human import HumanScorer
from codescore.stats import (
    Verdict,
    resample_indices,
    resampled_scores,
    tally,
    verdict,
)

NS_BIN = "NS"

DEFAULT_BIN_EDGES = (0.0, 2.0, 5.0, 10.0, 100.0)
HEARTHSTONE_BIN_EDGES = (0.0, 1.0, 2.0, 4.0, 100.0)

FORMATS = ("plain", "csv", "markdown")
VIEWS = ("significance", "mismatch")


class MismatchKind(enum.Enum):
    MATCH = "MATCH"
    TYPE_I_EQUIV = "TYPE_I_EQUIV"
    TYPE_I_REVERSED = "TYPE_I_REVERSED"
    TYPE_II = "TYPE_II"


@dataclass(frozen=True)
class BinSpec:
    edges: tuple[float, ...] = DEFAULT_BIN_EDGES

    def __post_init__(self):
        if len(self.edges) < 2:
            raise ValidationError("need at least two bin edges")
        if list(self.edges) != sorted(set(self.edges)):
            raise ValidationError("bin edges must be strictly ascending")
        if self.edges[0] != 0.0 or self.edges[-1] != 100.0:
            raise ValidationError("bins must cover [0, 100)")

    @property
    def labels(self) -> tuple[str, ...]:
        pairs = zip(self.edges, self.edges[1:])
        return tuple(f"[{_fmt(lo)}, {_fmt(hi)})" for lo, hi in pairs)

    def label_for(self, diff: float) -> str:
        for lo, hi, label in zip(self.edges, self.edges[1:], self.labels):
            if lo <= diff < hi:
                return label
        return self.labels[-1]  # diff == 100 exactly


def _fmt(edge: float) -> str:
    return str(int(edge)) if float(edge).is_integer() else str(edge)


def classify_pair(
    metric_verdict: Verdict,
    metric_diff: float,
    human_verdict: Verdict,
    bins: BinSpec,
) -> tuple[str, MismatchKind]:
    """Bin label and mismatch kind for one model pair.  Verdicts must be
    oriented the same way (both for the pair (A, B))."""
    diff = abs(metric_diff)
    if metric_verdict is Verdict.NOT_SIGNIFICANT:
        if human_verdict is Verdict.NOT_SIGNIFICANT:
            return NS_BIN, MismatchKind.MATCH
        return NS_BIN, MismatchKind.TYPE_II
    label = bins.label_for(diff)
    if human_verdict is Verdict.NOT_SIGNIFICANT:
        return label, MismatchKind.TYPE_I_EQUIV
    if human_verdict is metric_verdict:
        return label, MismatchKind.MATCH
    return label, MismatchKind.TYPE_I_REVERSED


@dataclass(frozen=True)
class PairOutcome:
    model_a: str
    model_b: str
    metric_diff: float
    metric_verdict: Verdict
    human_verdict: Verdict
    bin_label: str
    kind: MismatchKind


@dataclass(frozen=True)
class AgreementTable:
    metric: str
    bins: BinSpec
    outcomes: tuple[PairOutcome, ...]

    @property
    def n_pairs(self) -> int:
        return len(self.outcomes)

    def pairs_in(self, label: str) -> int:
        return sum(1 for o in self.outcomes if o.bin_label == label)

    def mismatches_in(self, label: str) -> int:
        return sum(
            1
            for o in self.outcomes
            if o.bin_label == label and o.kind is not MismatchKind.MATCH
        )

    def significant_vs_ns(self, label: str) -> tuple[int, int]:
        """Significance view: pairs binned by score difference regardless of
        verdict, split into significant and NS counts."""
        significant = ns = 0
        for o in self.outcomes:
            if self.bins.label_for(abs(o.metric_diff)) != label:
                continue
            if o.metric_verdict is Verdict.NOT_SIGNIFICANT:
                ns += 1
            else:
                significant += 1
        return significant, ns

    def total_mismatch_rate(self, average_bins: bool = False) -> float:
        """Pooled mismatch share by default; per-bin rate average on request."""
        if not self.outcomes:
            return 0.0
        if not average_bins:
            mismatches = sum(
                1 for o in self.outcomes if o.kind is not MismatchKind.MATCH
            )
            return mismatches / len(self.outcomes)
        rates = []
        for label in (*self.bins.labels, NS_BIN):
            pairs = self.pairs_in(label)
            if pairs:
                rates.append(self.mismatches_in(label) / pairs)
        return sum(rates) / len(rates) if rates else 0.0


def run_agreement(
    models: list[CandidateSet],
    corpus: EvaluationCorpus,
    grades: AggregatedGrades,
    scorers: dict[str, CorpusScorer],
    bins: BinSpec | None = None,
    n: int = 1000,
    seed: int = 0,
    threshold: float = 0.95,
    jobs: int | None = None,
) -> dict[str, AgreementTable]:
    """Classify all C(n_models, 2) pairs for every metric.

    One shared set of bootstrap draws (derived from ``seed``) is used for
    the human verdicts and every metric, and per-model statistics are
    computed once, so the pipeline is linear in models, not pairs.
    """
    if not scorers:
        raise ValidationError("no metrics requested")
    if bins is None:
        bins = BinSpec()
    indices = resample_indices(len(corpus), n, seed)

    human_points, human_samples = _model_scores(
        HumanScorer(grades), models, corpus, indices, jobs
    )
    pairs = [(i, j) for i in range(len(models)) for j in range(i + 1, len(models))]
    human_verdicts = {
        (i, j): verdict(
            tally(
                human_samples[i],
                human_samples[j],
                human_points[i],
                human_points[j],
                seed,
            ),
            threshold,
        ).verdict
        for i, j in pairs
    }

    tables = {}
    for name, scorer in scorers.items():
        points, samples = _model_scores(scorer, models, corpus, indices, jobs)
        outcomes = []
        for i, j in pairs:
            result = tally(samples[i], samples[j], points[i], points[j], seed)
            metric_verdict = verdict(result, threshold).verdict
            human_verdict = human_verdicts[(i, j)]
            diff = points[i] - points[j]
            label, kind = classify_pair(metric_verdict, diff, human_verdict, bins)
            outcomes.append(
                PairOutcome(
                    model_a=models[i].model_id,
                    model_b=models[j].model_id,
                    metric_diff=diff,
                    metric_verdict=metric_verdict,
                    human_verdict=human_verdict,
                    bin_label=label,
                    kind=kind,
                )
            )
        tables[name] = AgreementTable(metric=name, bins=bins, outcomes=tuple(outcomes))
    return tables


def _model_scores(scorer, models, corpus, indices, jobs):
    def stats_for(model):
        return scorer.snippet_stats(corpus, model)

    if jobs is not None and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            all_stats = list(pool.map(stats_for, models))
    else:
        all_stats = [stats_for(model) for model in models]
    points = [
        float(scorer.score_totals(stats.sum(axis=0, keepdims=True))[0])
        for stats in all_stats
    ]
    samples = [resampled_scores(scorer, stats, indices) for stats in all_stats]
    return points, samples


def render_report(
    tables: dict[str, AgreementTable],
    fmt: str = "plain",
    view: str = "mismatch",
    average_bins: bool = False,
) -> str:
    if not tables:
        raise ValidationError("no metrics to report")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")
    if view not in VIEWS:
        raise ValueError(f"unknown view {view!r}; choose from {VIEWS}")
    bins = next(iter(tables.values())).bins
    if view == "significance":
        header = ["Metric"]
        for label in bins.labels:
            header += [f"{label} Significant", f"{label} NS"]
        rows = []
        for name, table in tables.items():
            row = [name]
            for label in bins.labels:
                significant, ns = table.significant_vs_ns(label)
                row += [str(significant), str(ns)]
            rows.append(row)
    else:
        header = ["Metric"]
        for label in (*bins.labels, NS_BIN):
            header += [f"{label} Mismatches", f"{label} Pairs"]
        header.append("Total mismatch")
        rows = []
        for name, table in tables.items():
            row = [name]
            for label in (*bins.labels, NS_BIN):
                pairs = table.pairs_in(label)
                mism = table.mismatches_in(label)
                rate = f"{100.0 * mism / pairs:.1f}%" if pairs else "-"
                row += [rate, str(pairs)]
            row.append(f"{100.0 * table.total_mismatch_rate(average_bins):.2f}%")
            rows.append(row)
    return _format_rows(header, rows, fmt)


def _format_rows(header: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(row) for row in rows]
        return "\n".join(lines) + "\n"
    if fmt == "markdown":
        lines = [
            "| " + " | ".join(header) + " |",
            "|" + "|".join(["---"] * len(header)) + "|",
        ]
        lines += ["| " + " | ".join(row) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    widths = [
        max(len(header[col]), *(len(row[col]) for row in rows))
        for col in range(len(header))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"
