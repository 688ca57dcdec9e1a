"""Edit distances between token sequences, syntax trees, and data-flow graphs.

* ``string_edit_distance``: token-level Levenshtein with unit costs.
* ``tree_edit_distance``: ordered-tree edit distance (Zhang-Shasha dynamic
  program) with unit insert/delete/relabel costs.  Subtree movement is not a
  native operation of this model and therefore costs a delete plus an insert.
* ``graph_edit_distance``: minimum vertex/edge edit count.  Exact by
  branch-and-bound search up to ``_EXACT_LIMIT`` vertices; above that, an
  assignment-based upper bound (Hungarian matching on vertex costs, then the
  true induced cost of the resulting mapping).
"""

from __future__ import annotations

from typing import Hashable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from codescore.dataflow import DataflowGraph
from codescore.syntax import Ast

_EXACT_LIMIT = 6


def string_edit_distance(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Minimum insert/delete/substitute count transforming ``a`` into ``b``."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, item_a in enumerate(a, start=1):
        current = [i] + [0] * len(b)
        for j, item_b in enumerate(b, start=1):
            cost = 0 if item_a == item_b else 1
            current[j] = min(
                previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost
            )
        previous = current
    return previous[len(b)]


class _AnnotatedTree:
    """Post-order node array with leftmost descendants and keyroots."""

    def __init__(self, root: Ast):
        self.nodes: list[Ast] = []
        self.lmds: list[int] = []
        self.keyroots: list[int] = []
        lmd_of: dict[int, int] = {}

        def visit(node: Ast) -> int:
            child_lmds = [visit(child) for child in node.children]
            index = len(self.nodes)
            self.nodes.append(node)
            lmd = child_lmds[0] if child_lmds else index
            self.lmds.append(lmd)
            lmd_of[lmd] = index  # last (highest) node with this lmd wins
            return lmd

        visit(root)
        self.keyroots = sorted(lmd_of.values())


def tree_edit_distance(t1: Ast, t2: Ast) -> int:
    """Ordered-tree edit distance with unit costs; labels and leaf values
    both participate in the relabel cost."""
    a, b = _AnnotatedTree(t1), _AnnotatedTree(t2)
    n, m = len(a.nodes), len(b.nodes)
    treedist = [[0] * m for _ in range(n)]
    sig_a = [node.signature() for node in a.nodes]
    sig_b = [node.signature() for node in b.nodes]

    for i in a.keyroots:
        for j in b.keyroots:
            _forest_dist(a, b, i, j, sig_a, sig_b, treedist)
    return int(treedist[n - 1][m - 1])


def _forest_dist(a, b, i, j, sig_a, sig_b, treedist) -> None:
    al, bl = a.lmds, b.lmds
    m = i - al[i] + 2
    n = j - bl[j] + 2
    fd = [[0] * n for _ in range(m)]
    ioff = al[i] - 1
    joff = bl[j] - 1
    for x in range(1, m):
        fd[x][0] = fd[x - 1][0] + 1
    for y in range(1, n):
        fd[0][y] = fd[0][y - 1] + 1
    for x in range(1, m):
        al_x = al[x + ioff]
        row = fd[x]
        above = fd[x - 1]
        for y in range(1, n):
            if al[i] == al_x and bl[j] == bl[y + joff]:
                cost = 0 if sig_a[x + ioff] == sig_b[y + joff] else 1
                row[y] = min(
                    above[y] + 1,
                    row[y - 1] + 1,
                    above[y - 1] + cost,
                )
                treedist[x + ioff][y + joff] = row[y]
            else:
                p = al_x - 1 - ioff
                q = bl[y + joff] - 1 - joff
                row[y] = min(
                    above[y] + 1,
                    row[y - 1] + 1,
                    fd[p][q] + treedist[x + ioff][y + joff],
                )


def _edge_maps(g: DataflowGraph) -> dict[tuple[int, int], str]:
    pos = {v: i for i, v in enumerate(g.vertices)}
    return {(pos[a], pos[b]): kind for a, b, kind in g.edges}


def graph_edit_distance(g1: DataflowGraph, g2: DataflowGraph) -> int:
    """Vertex/edge edit count (insert, delete, substitute, unit costs).

    Exact when both graphs have at most ``_EXACT_LIMIT`` vertices; otherwise
    an upper bound from an assignment-based vertex mapping.
    """
    n1, n2 = len(g1.vertices), len(g2.vertices)
    e1, e2 = _edge_maps(g1), _edge_maps(g2)
    labels1, labels2 = g1.vertices, g2.vertices
    if max(n1, n2) <= _EXACT_LIMIT:
        return _exact_ged(n1, n2, labels1, labels2, e1, e2)
    return _assignment_ged(n1, n2, labels1, labels2, e1, e2)


def mapping_cost(
    mapping: dict[int, int | None],
    n2: int,
    labels1: Sequence[str],
    labels2: Sequence[str],
    e1: dict[tuple[int, int], str],
    e2: dict[tuple[int, int], str],
) -> int:
    """Total edit cost induced by a vertex mapping (``None`` = deletion)."""
    cost = 0
    mapped_targets = set()
    for u, v in mapping.items():
        if v is None:
            cost += 1
        else:
            mapped_targets.add(v)
            if labels1[u] != labels2[v]:
                cost += 1
    cost += n2 - len(mapped_targets)
    for (u, u2), kind in e1.items():
        v, v2 = mapping.get(u), mapping.get(u2)
        if v is None or v2 is None:
            cost += 1
        else:
            other = e2.get((v, v2))
            if other is None:
                cost += 1
            elif other != kind:
                cost += 1  # relabel the edge
    reverse = {v: u for u, v in mapping.items() if v is not None}
    for (v, v2), kind in e2.items():
        u, u2 = reverse.get(v), reverse.get(v2)
        if u is None or u2 is None:
            cost += 1
        elif (u, u2) not in e1:
            cost += 1
    return cost


def _exact_ged(n1, n2, labels1, labels2, e1, e2) -> int:
    best = mapping_cost({u: None for u in range(n1)}, n2, labels1, labels2, e1, e2)

    def extend(u: int, mapping: dict[int, int | None], used: set[int], partial: int):
        nonlocal best
        if partial >= best:
            return
        if u == n1:
            total = mapping_cost(mapping, n2, labels1, labels2, e1, e2)
            best = min(best, total)
            return
        # try same-index target first so identical graphs close immediately
        candidates = sorted(range(n2), key=lambda v: (v != u, v))
        for v in candidates:
            if v in used:
                continue
            sub = 0 if labels1[u] == labels2[v] else 1
            mapping[u] = v
            used.add(v)
            extend(u + 1, mapping, used, partial + sub)
            used.discard(v)
        mapping[u] = None
        extend(u + 1, mapping, used, partial + 1)
        del mapping[u]

    extend(0, {}, set(), 0)
    return best


def _assignment_ged(n1, n2, labels1, labels2, e1, e2) -> int:
    size = n1 + n2
    big = float(size + len(e1) + len(e2) + 1)
    cost = np.full((size, size), big)
    out1 = np.zeros(n1)
    in1 = np.zeros(n1)
    for (u, u2) in e1:
        out1[u] += 1
        in1[u2] += 1
    out2 = np.zeros(n2)
    in2 = np.zeros(n2)
    for (v, v2) in e2:
        out2[v] += 1
        in2[v2] += 1
    for u in range(n1):
        for v in range(n2):
            sub = 0.0 if labels1[u] == labels2[v] else 1.0
            structure = abs(out1[u] - out2[v]) + abs(in1[u] - in2[v])
            cost[u][v] = sub + structure / 2.0
    for u in range(n1):
        cost[u][n2 + u] = 1.0 + (out1[u] + in1[u]) / 2.0
    for v in range(n2):
        cost[n1 + v][v] = 1.0 + (out2[v] + in2[v]) / 2.0
    cost[n1:, n2:] = 0.0
    rows, cols = linear_sum_assignment(cost)
    mapping: dict[int, int | None] = {}
    for r, c in zip(rows, cols):
        if r < n1:
            mapping[r] = c if c < n2 else None
    return mapping_cost(mapping, n2, labels1, labels2, e1, e2)
