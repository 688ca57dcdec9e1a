"""Cascading structural similarity: graphs, then trees, then token strings.

Per (reference, candidate) pair:

* when both snippets parse and their dependence graphs are non-trivial,
  ``1 - GED / (size(G_ref) + size(G_cand))`` where the graphs are data-flow
  graphs augmented with control edges and size counts vertices plus edges;
* otherwise, when both parse, ``1 - TED / (nodes(T_ref) + nodes(T_cand))``
  over the syntax trees;
* otherwise ``1 - SED / max(len_ref, len_cand)`` over token sequences
  (defined as 1 when both are empty).

Each level's distance is bounded by its denominator, so every score lands in
[0, 1].  With several references the snippet takes the maximum; the corpus
value is the mean of snippet scores.
"""

from __future__ import annotations

from codescore.dataflow import DataflowGraph, extract_pdg
from codescore.distances import (
    graph_edit_distance,
    string_edit_distance,
    tree_edit_distance,
)
from codescore.metrics.base import PerSnippetScorer
from codescore.metrics.config import MetricConfig
from codescore.syntax import Ast, parse_ast
from codescore.tokens import tokenize_texts


class RubyScorer(PerSnippetScorer):
    name = "ruby"

    def __init__(self, config: MetricConfig):
        self.refs_policy = config.multi_reference
        self._parsed: dict[str, tuple[Ast | None, DataflowGraph | None, list[str]]] = {}
        self._pair_cache: dict[tuple[str, str], float] = {}

    def _analyze(self, text: str):
        if text not in self._parsed:
            tree = parse_ast(text)
            pdg = extract_pdg(tree) if tree is not None else None
            self._parsed[text] = (tree, pdg, tokenize_texts(text))
        return self._parsed[text]

    def pair_similarity(self, reference: str, candidate: str) -> float:
        """Similarity of one pair on the 0-1 scale."""
        key = (reference, candidate)
        if key in self._pair_cache:
            return self._pair_cache[key]
        ref_tree, ref_pdg, ref_tokens = self._analyze(reference)
        cand_tree, cand_pdg, cand_tokens = self._analyze(candidate)
        if ref_tree is not None and cand_tree is not None:
            graph_size = ref_pdg.size() + cand_pdg.size()
            if graph_size > 0:
                ged = graph_edit_distance(ref_pdg, cand_pdg)
                value = 1.0 - ged / graph_size
            else:
                ted = tree_edit_distance(ref_tree, cand_tree)
                value = 1.0 - ted / (ref_tree.size() + cand_tree.size())
        else:
            longest = max(len(ref_tokens), len(cand_tokens))
            if longest == 0:
                value = 1.0
            else:
                sed = string_edit_distance(ref_tokens, cand_tokens)
                value = 1.0 - sed / longest
        self._pair_cache[key] = value
        return value

    def snippet_score(self, references, candidate) -> float:
        return 100.0 * max(
            self.pair_similarity(ref, candidate) for ref in references
        )
