"""Alignment-based recall-weighted metric with a fragmentation penalty.

Per snippet the candidate and reference token streams are aligned one-to-one
by staged matchers (exact surface match first, then Porter-stem match when
enabled).  Among all maximal match sets, the alignment is chosen by three
ordered criteria: most covered words, fewest chunks (a chunk is a maximal
run of matches contiguous and identically ordered in both sentences), and
smallest sum of absolute distances between matched positions.  The selection
runs a beam search over candidate positions, which is exact for the short
sequences typical here and a documented approximation beyond that.

Scoring: weighted precision ``P`` and recall ``R`` over matched tokens
(matcher weights; function words, when configured, weigh ``1 - delta``
against content words) combine into ``Fmean = P*R / (alpha*P + (1-alpha)*R)``,
then ``score = Fmean * (1 - gamma * (chunks/matches)**beta)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from codescore.metrics.base import PerSnippetScorer
from codescore.metrics.config import MeteorConfig, MetricConfig
from codescore.metrics.porter import stem
from codescore.tokens import tokenize_texts

EXACT, STEM = 0, 1


@dataclass(frozen=True)
class Alignment:
    matches: tuple[tuple[int, int, int], ...]  # (hyp_index, ref_index, stage)
    chunks: int
    distance: int


def candidate_matches(
    hyp: list[str], ref: list[str], enable_stem: bool
) -> dict[tuple[int, int], int]:
    """Best applicable matcher stage for every (hyp, ref) position pair."""
    stems_h = [stem(tok) for tok in hyp] if enable_stem else None
    stems_r = [stem(tok) for tok in ref] if enable_stem else None
    pairs: dict[tuple[int, int], int] = {}
    for i, tok_h in enumerate(hyp):
        for j, tok_r in enumerate(ref):
            if tok_h == tok_r:
                pairs[(i, j)] = EXACT
            elif enable_stem and stems_h[i] == stems_r[j]:
                pairs[(i, j)] = STEM
    return pairs


def _chunks_of(matches: tuple[tuple[int, int, int], ...]) -> int:
    chunks = 0
    prev = None
    for i, j, _ in matches:  # matches are sorted by hyp index
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return chunks


def align(
    hyp: list[str], ref: list[str], config: MeteorConfig
) -> Alignment:
    """Beam search over hypothesis positions for the best-ranked alignment."""
    pairs = candidate_matches(hyp, ref, config.enable_stem)
    by_hyp: dict[int, list[tuple[int, int]]] = {}
    for (i, j), stage in pairs.items():
        by_hyp.setdefault(i, []).append((j, stage))
    for options in by_hyp.values():
        options.sort()
    # state: (matches tuple, used ref-index frozenset)
    states: list[tuple[tuple[tuple[int, int, int], ...], frozenset]] = [((), frozenset())]
    remaining = sorted(by_hyp)
    for position, i in enumerate(remaining):
        next_states = []
        for matches, used in states:
            next_states.append((matches, used))  # leave hyp[i] unmatched
            for j, stage in by_hyp[i]:
                if j not in used:
                    next_states.append((matches + ((i, j, stage),), used | {j}))
        # most matches possible from here on bounds future coverage equally
        # for all states, so ranking partial states by the final criteria is
        # a faithful beam
        next_states.sort(key=_partial_key)
        del next_states[config.beam_width :]
        states = next_states
    best = min(states, key=_partial_key)
    matches = best[0]
    return Alignment(
        matches=matches,
        chunks=_chunks_of(matches),
        distance=sum(abs(i - j) for i, j, _ in matches),
    )


def _partial_key(state):
    matches = state[0]
    return (
        -len(matches),
        _chunks_of(matches),
        sum(abs(i - j) for i, j, _ in matches),
        matches,
    )


def meteor_statistics(
    hyp: list[str], ref: list[str], config: MeteorConfig
) -> tuple[float, float, float, float, int, int]:
    """(hyp match mass, ref match mass, hyp total, ref total, chunks, matches)."""
    alignment = align(hyp, ref, config)
    weights = {EXACT: config.weight_exact, STEM: config.weight_stem}
    function_words = set(config.function_words)
    delta = config.delta if function_words else 1.0

    def side_mass(tokens: list[str], indices: list[int], stages: list[int]) -> float:
        mass = 0.0
        for idx, stage in zip(indices, stages):
            share = (1.0 - delta) if tokens[idx] in function_words else delta
            mass += weights[stage] * share
        return mass

    def side_total(tokens: list[str]) -> float:
        return sum(
            (1.0 - delta) if tok in function_words else delta for tok in tokens
        )

    stages = [stage for _, _, stage in alignment.matches]
    hyp_mass = side_mass(hyp, [i for i, _, _ in alignment.matches], stages)
    ref_mass = side_mass(ref, [j for _, j, _ in alignment.matches], stages)
    return (
        hyp_mass,
        ref_mass,
        side_total(hyp),
        side_total(ref),
        alignment.chunks,
        len(alignment.matches),
    )


def meteor_score(hyp: list[str], ref: list[str], config: MeteorConfig) -> float:
    """Score of one pair on the 0-1 scale."""
    hyp_mass, ref_mass, hyp_total, ref_total, chunks, matches = meteor_statistics(
        hyp, ref, config
    )
    return combine(hyp_mass, ref_mass, hyp_total, ref_total, chunks, matches, config)


def combine(
    hyp_mass: float,
    ref_mass: float,
    hyp_total: float,
    ref_total: float,
    chunks: float,
    matches: float,
    config: MeteorConfig,
) -> float:
    if matches == 0 or hyp_total == 0 or ref_total == 0:
        return 0.0
    precision = hyp_mass / hyp_total
    recall = ref_mass / ref_total
    if precision == 0.0 and recall == 0.0:
        return 0.0
    fmean = precision * recall / (config.alpha * precision + (1 - config.alpha) * recall)
    penalty = config.gamma * (chunks / matches) ** config.beta
    return fmean * (1.0 - penalty)


class MeteorScorer(PerSnippetScorer):
    name = "meteor"

    def __init__(self, config: MetricConfig):
        self.config = config.meteor
        self.micro = config.aggregation == "micro"
        self.refs_policy = config.multi_reference

    def snippet_score(self, references, candidate) -> float:
        hyp = tokenize_texts(candidate)
        best = 0.0
        for ref_text in references:
            ref = tokenize_texts(ref_text)
            best = max(best, meteor_score(hyp, ref, self.config))
        return 100.0 * best

    def snippet_stats(self, corpus, candidates):
        if not self.micro:
            return super().snippet_stats(corpus, candidates)
        rows = []
        for problem in corpus:
            hyp = tokenize_texts(candidates.candidates[problem.problem_id])
            best_stats = None
            best_score = -1.0
            for ref_text in self.references_of(problem):
                ref = tokenize_texts(ref_text)
                stats = meteor_statistics(hyp, ref, self.config)
                score = combine(*stats, self.config)
                if score > best_score:
                    best_score = score
                    best_stats = stats
            rows.append(list(best_stats))
        return np.asarray(rows, dtype=np.float64)

    def score_totals(self, totals):
        if not self.micro:
            return super().score_totals(totals)
        totals = np.atleast_2d(totals)
        return np.asarray(
            [100.0 * combine(*row, self.config) for row in totals]
        )
