"""Composite code similarity: n-gram, keyword-weighted, syntactic, semantic.

The corpus score is the weighted sum (default weights 0.1, 0.1, 0.4, 0.4) of

* corpus BLEU,
* the keyword-weighted unigram variant,
* syntactic match: clipped count of candidate AST subtrees (leaf values
  disregarded) found among reference subtrees, over the reference subtree
  count, micro-averaged across the corpus,
* semantic match: matched normalized data-flow edges over reference
  data-flow edges, micro-averaged.

References must parse.  A candidate that does not parse simply scores zero
on both structural components -- generated snippets frequently fail to
parse, and that must depress the score, not crash the run.  When a corpus
(or a bootstrap resample) has no reference data-flow at all, the semantic
component is undefined; it is dropped and the remaining weights are
renormalized, likewise for the syntactic component.
"""

from __future__ import annotations

import numpy as np

from codescore.corpus import ValidationError
from codescore.dataflow import dataflow_match, extract_dataflow
from codescore.metrics.base import CorpusScorer, check_coverage
from codescore.metrics.bleu import CorpusBleuScorer, WeightedUnigramBleuScorer
from codescore.metrics.config import MetricConfig
from codescore.syntax import extract_subtrees, parse_ast, subtree_match


class _StructureCache:
    """Parse results keyed by snippet text; candidates repeat heavily across
    model grids, so this is a large constant-factor win."""

    def __init__(self):
        self._cache: dict[str, tuple | None] = {}

    def get(self, text: str):
        if text not in self._cache:
            tree = parse_ast(text)
            if tree is None:
                self._cache[text] = None
            else:
                self._cache[text] = (extract_subtrees(tree), extract_dataflow(tree))
        return self._cache[text]


class CodeBleuScorer(CorpusScorer):
    name = "codebleu"
    has_per_snippet = False

    def __init__(self, config: MetricConfig):
        self.weights = config.codebleu.weights
        self.bleu = CorpusBleuScorer(config)
        self.weighted = WeightedUnigramBleuScorer(config)
        self.max_n = config.bleu.max_n
        self.refs_policy = config.multi_reference
        self._structures = _StructureCache()

    def _structure_row(self, references: tuple[str, ...], candidate: str) -> list[float]:
        cand = self._structures.get(candidate)
        best_ast: tuple[float, tuple[int, int]] | None = None
        best_df: tuple[float, tuple[int, int]] | None = None
        for ref_text in references:
            ref = self._structures.get(ref_text)
            if ref is None:
                raise ValidationError(
                    f"reference snippet does not parse: {ref_text!r}"
                )
            ref_subtrees, ref_dfg = ref
            if cand is None:
                ast_pair = (0, sum(ref_subtrees.values()))
                df_pair = (0, len(ref_dfg.data_edges))
            else:
                cand_subtrees, cand_dfg = cand
                ast_pair = subtree_match(ref_subtrees, cand_subtrees)
                df_pair = dataflow_match(ref_dfg, cand_dfg)
            ast_ratio = ast_pair[0] / ast_pair[1] if ast_pair[1] else -1.0
            df_ratio = df_pair[0] / df_pair[1] if df_pair[1] else -1.0
            if best_ast is None or ast_ratio > best_ast[0]:
                best_ast = (ast_ratio, ast_pair)
            if best_df is None or df_ratio > best_df[0]:
                best_df = (df_ratio, df_pair)
        return [float(v) for v in (*best_ast[1], *best_df[1])]

    def snippet_stats(self, corpus, candidates) -> np.ndarray:
        check_coverage(corpus, candidates)
        bleu_stats = self.bleu.snippet_stats(corpus, candidates)
        weighted_stats = self.weighted.snippet_stats(corpus, candidates)
        structure = np.asarray(
            [
                self._structure_row(
                    self.references_of(problem),
                    candidates.candidates[problem.problem_id],
                )
                for problem in corpus
            ],
            dtype=np.float64,
        )
        return np.hstack([bleu_stats, weighted_stats, structure])

    def score_totals(self, totals: np.ndarray) -> np.ndarray:
        totals = np.atleast_2d(totals)
        bleu_cols = 2 * self.max_n + 2
        bleu = self.bleu.score_totals(totals[:, :bleu_cols]) / 100.0
        weighted = self.weighted.score_totals(totals[:, bleu_cols : bleu_cols + 4]) / 100.0
        ast_num = totals[:, bleu_cols + 4]
        ast_den = totals[:, bleu_cols + 5]
        df_num = totals[:, bleu_cols + 6]
        df_den = totals[:, bleu_cols + 7]
        ast = np.divide(ast_num, ast_den, out=np.zeros(len(totals)), where=ast_den > 0)
        df = np.divide(df_num, df_den, out=np.zeros(len(totals)), where=df_den > 0)
        w = np.asarray(self.weights)
        components = np.stack([bleu, weighted, ast, df], axis=1)
        available = np.stack(
            [
                np.ones(len(totals), dtype=bool),
                np.ones(len(totals), dtype=bool),
                ast_den > 0,
                df_den > 0,
            ],
            axis=1,
        )
        weight_mass = (w * available).sum(axis=1)
        weighted_sum = (w * components * available).sum(axis=1)
        return 100.0 * weighted_sum / weight_mass
