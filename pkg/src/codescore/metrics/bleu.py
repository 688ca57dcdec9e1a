"""BLEU variants: corpus-native, sentence-averaged, and keyword-weighted.

Corpus BLEU is the micro-averaged original: clipped n-gram matches and
candidate n-gram totals are summed over the whole corpus before dividing,
then combined as ``BP * exp(sum w_n log p_n)`` with
``BP = min(1, exp(1 - r/c))``.  Sentence BLEU scores each snippet as its own
corpus (with smoothing, since higher-order matches are often zero for a
single pair) and averages; the two aggregations genuinely differ.

The keyword-weighted variant is a unigram-only measure where keyword tokens
weigh ``keyword_weight`` times more than other tokens.  Its denominator is
the total weighted mass of the *reference* unigrams -- that convention, not
plain candidate-side precision, is what reproduces the component's published
worked example -- multiplied by the same brevity penalty.
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

from codescore.corpus import ValidationError
from codescore.metrics.base import CorpusScorer, PerSnippetScorer, check_coverage
from codescore.metrics.config import MetricConfig
from codescore.tokens import KEYWORDS, tokenize_texts


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _clipped_matches(
    hyp_tokens: list[str], ref_token_lists: list[list[str]], max_n: int
) -> tuple[list[int], list[int]]:
    clipped, totals = [], []
    for n in range(1, max_n + 1):
        hyp_counts = _ngrams(hyp_tokens, n)
        max_ref: Counter = Counter()
        for ref_tokens in ref_token_lists:
            for gram, count in _ngrams(ref_tokens, n).items():
                if count > max_ref[gram]:
                    max_ref[gram] = count
        clipped.append(
            sum(min(count, max_ref[gram]) for gram, count in hyp_counts.items())
        )
        totals.append(sum(hyp_counts.values()))
    return clipped, totals


def _closest_ref_length(ref_lengths: list[int], hyp_length: int) -> int:
    return min(ref_lengths, key=lambda length: (abs(length - hyp_length), length))


def _sentence_bleu(
    clipped: list[int],
    totals: list[int],
    r: int,
    c: int,
    weights: tuple[float, ...],
    smoothing: str,
    floor_value: float,
    add_k: float,
) -> float:
    """Combine one pair's counts into a 0-1 score with the given smoothing."""
    if c == 0:
        return 0.0
    log_sum = 0.0
    weight_mass = 0.0
    floor_scale = 1.0
    for n, (clip, total) in enumerate(zip(clipped, totals), start=1):
        w = weights[n - 1]
        if total == 0:
            continue  # pair shorter than n; order carries no information
        weight_mass += w
        if smoothing == "add-k" and n > 1:
            p = (clip + add_k) / (total + add_k)
        elif clip > 0:
            p = clip / total
        elif smoothing == "floor":
            floor_scale *= 2.0
            p = floor_value / (floor_scale * total)
        else:
            return 0.0
        log_sum += w * math.log(p)
    if weight_mass == 0:
        return 0.0
    brevity = min(1.0, math.exp(1.0 - r / c))
    # weights of absent orders are renormalized over the present ones
    return brevity * math.exp(log_sum / weight_mass)


class CorpusBleuScorer(CorpusScorer):
    """Micro-averaged corpus BLEU; no per-snippet decomposition exists."""

    name = "bleu"
    has_per_snippet = False

    def __init__(self, config: MetricConfig):
        self.config = config.bleu
        self.refs_policy = config.multi_reference

    def snippet_stats(self, corpus, candidates) -> np.ndarray:
        check_coverage(corpus, candidates)
        max_n = self.config.max_n
        rows = []
        for problem in corpus:
            hyp = tokenize_texts(candidates.candidates[problem.problem_id])
            refs = [tokenize_texts(ref) for ref in self.references_of(problem)]
            clipped, totals = _clipped_matches(hyp, refs, max_n)
            r = _closest_ref_length([len(ref) for ref in refs], len(hyp))
            rows.append(clipped + totals + [r, len(hyp)])
        return np.asarray(rows, dtype=np.float64)

    def score_totals(self, totals: np.ndarray) -> np.ndarray:
        totals = np.atleast_2d(totals)
        max_n = self.config.max_n
        clip = totals[:, :max_n]
        tot = totals[:, max_n : 2 * max_n]
        r = totals[:, 2 * max_n]
        c = totals[:, 2 * max_n + 1]
        weights = np.asarray(self.config.weights)
        included = tot > 0
        weight_mass = (weights * included).sum(axis=1)
        safe_clip = np.where(clip > 0, clip, 1.0)
        safe_tot = np.where(tot > 0, tot, 1.0)
        log_p = np.log(safe_clip / safe_tot)
        log_sum = (weights * np.where(included & (clip > 0), log_p, 0.0)).sum(axis=1)
        geo = np.exp(log_sum / np.where(weight_mass > 0, weight_mass, 1.0))
        brevity = np.minimum(1.0, np.exp(1.0 - r / np.where(c > 0, c, 1.0)))
        dead = (
            (c == 0)
            | (weight_mass == 0)
            | ((included & (clip == 0)).any(axis=1))
        )
        return np.where(dead, 0.0, 100.0 * brevity * geo)


class SentenceBleuScorer(PerSnippetScorer):
    """Mean of per-snippet BLEU, each snippet scored as its own corpus."""

    name = "sentence-bleu"

    def __init__(self, config: MetricConfig):
        self.config = config.bleu
        self.refs_policy = config.multi_reference

    def snippet_score(self, references, candidate) -> float:
        cfg = self.config
        hyp = tokenize_texts(candidate)
        refs = [tokenize_texts(ref) for ref in references]
        clipped, totals = _clipped_matches(hyp, refs, cfg.max_n)
        r = _closest_ref_length([len(ref) for ref in refs], len(hyp))
        return 100.0 * _sentence_bleu(
            clipped, totals, r, len(hyp), cfg.weights,
            cfg.smoothing, cfg.floor_value, cfg.add_k,
        )


class WeightedUnigramBleuScorer(CorpusScorer):
    """Keyword-weighted unigram overlap over reference mass, with BLEU BP."""

    name = "bleu-weighted"
    has_per_snippet = False

    def __init__(self, config: MetricConfig):
        self.keyword_weight = config.codebleu.keyword_weight
        self.refs_policy = config.multi_reference

    def _weight(self, token_text: str) -> float:
        return self.keyword_weight if token_text in KEYWORDS else 1.0

    def _weighted_counts(self, text: str) -> tuple[Counter, float, int]:
        tokens = tokenize_texts(text)
        counts = Counter(tokens)
        mass = sum(self._weight(text) * count for text, count in counts.items())
        return counts, mass, len(tokens)

    def snippet_row(self, references: tuple[str, ...], candidate: str) -> list[float]:
        hyp_counts, _, hyp_len = self._weighted_counts(candidate)
        best: tuple[float, list[float]] | None = None
        for ref in references:
            ref_counts, ref_mass, ref_len = self._weighted_counts(ref)
            if ref_mass == 0:
                raise ValidationError("reference snippet has no tokens")
            matched = sum(
                self._weight(text) * min(count, ref_counts.get(text, 0))
                for text, count in hyp_counts.items()
            )
            ratio = matched / ref_mass
            if best is None or ratio > best[0]:
                best = (ratio, [matched, ref_mass, float(ref_len), float(hyp_len)])
        assert best is not None
        return best[1]

    def snippet_stats(self, corpus, candidates) -> np.ndarray:
        check_coverage(corpus, candidates)
        rows = [
            self.snippet_row(
                self.references_of(problem), candidates.candidates[problem.problem_id]
            )
            for problem in corpus
        ]
        return np.asarray(rows, dtype=np.float64)

    def score_totals(self, totals: np.ndarray) -> np.ndarray:
        totals = np.atleast_2d(totals)
        matched, ref_mass, r, c = (totals[:, i] for i in range(4))
        with np.errstate(divide="ignore", invalid="ignore"):
            brevity = np.minimum(1.0, np.exp(1.0 - r / np.where(c > 0, c, 1.0)))
            ratio = np.where(ref_mass > 0, matched / np.where(ref_mass > 0, ref_mass, 1.0), 0.0)
        return np.where(c > 0, 100.0 * brevity * ratio, 0.0)
