"""Data-flow graphs over normalized variable occurrences.

Vertices are the variables of a snippet (every ``Name`` occurrence), renamed
``var_0``, ``var_1``, ... in order of first appearance so that graphs are
invariant under consistent variable renaming.  A directed data edge
``(var_i, var_j)`` records that the value of ``var_j`` comes from ``var_i``:
assignments (plain, augmented, annotated, walrus), ``for`` targets, ``with``
bindings, and comprehension targets all contribute provenance edges.

``extract_pdg`` additionally adds control edges: variables inside the body of
a compound statement (``if``/``for``/``while``/``def``/``with``) depend on the
variables of its header.  This is a deliberately light-weight stand-in for a
full program dependence graph; callers that need a weaker structure fall
back to tree- or token-level comparison.
"""

from __future__ import annotations

import ast as _pyast
from dataclasses import dataclass, field

from codescore.syntax import Ast

DATA = "data"
CONTROL = "control"


@dataclass(frozen=True)
class DataflowGraph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str, str]]
    # original names in appearance order; excluded from equality on purpose
    names: tuple[str, ...] = field(default=(), compare=False)

    def size(self) -> int:
        """Vertex count plus edge count."""
        return len(self.vertices) + len(self.edges)

    @property
    def data_edges(self) -> frozenset[tuple[str, str]]:
        return frozenset((a, b) for a, b, kind in self.edges if kind == DATA)


def _names_in(node: _pyast.AST) -> list[str]:
    return [n.id for n in _pyast.walk(node) if isinstance(n, _pyast.Name)]


def _occurrence_order(tree: _pyast.AST) -> list[str]:
    order: list[str] = []

    def visit(node: _pyast.AST) -> None:
        if isinstance(node, _pyast.Name):
            order.append(node.id)
        for child in _pyast.iter_child_nodes(node):
            visit(child)

    visit(tree)
    return order


_HEADER_FIELDS = {
    _pyast.If: ("test",),
    _pyast.While: ("test",),
    _pyast.For: ("target", "iter"),
    _pyast.AsyncFor: ("target", "iter"),
    _pyast.With: ("items",),
    _pyast.AsyncWith: ("items",),
    _pyast.FunctionDef: ("args", "decorator_list", "returns"),
    _pyast.AsyncFunctionDef: ("args", "decorator_list", "returns"),
}
_BODY_FIELDS = ("body", "orelse", "finalbody")


def _provenance_pairs(tree: _pyast.AST) -> list[tuple[str, str]]:
    pairs: list[tuple[str, str]] = []

    def assign(sources: list[str], targets: list[str]) -> None:
        pairs.extend((s, t) for s in sources for t in targets)

    for node in _pyast.walk(tree):
        if isinstance(node, _pyast.Assign):
            assign(_names_in(node.value), [n for t in node.targets for n in _names_in(t)])
        elif isinstance(node, _pyast.AugAssign):
            targets = _names_in(node.target)
            assign(_names_in(node.value) + targets, targets)
        elif isinstance(node, _pyast.AnnAssign) and node.value is not None:
            assign(_names_in(node.value), _names_in(node.target))
        elif isinstance(node, (_pyast.For, _pyast.AsyncFor)):
            assign(_names_in(node.iter), _names_in(node.target))
        elif isinstance(node, _pyast.withitem) and node.optional_vars is not None:
            assign(_names_in(node.context_expr), _names_in(node.optional_vars))
        elif isinstance(node, _pyast.comprehension):
            assign(_names_in(node.iter), _names_in(node.target))
        elif isinstance(node, _pyast.NamedExpr):
            assign(_names_in(node.value), _names_in(node.target))
    return pairs


def _control_pairs(tree: _pyast.AST) -> list[tuple[str, str]]:
    pairs: list[tuple[str, str]] = []
    for node in _pyast.walk(tree):
        header_fields = _HEADER_FIELDS.get(type(node))
        if header_fields is None:
            continue
        header: list[str] = []
        for fname in header_fields:
            value = getattr(node, fname, None)
            if value is None:
                continue
            for item in value if isinstance(value, list) else [value]:
                header.extend(_names_in(item))
        if not header:
            continue
        body: list[str] = []
        for fname in _BODY_FIELDS:
            for stmt in getattr(node, fname, []) or []:
                body.extend(_names_in(stmt))
        pairs.extend((h, b) for h in header for b in body)
    return pairs


def _build(tree: Ast, with_control: bool) -> DataflowGraph:
    if tree.pynode is None:
        raise ValueError("tree was not produced by parse_ast")
    pytree = tree.pynode
    order = _occurrence_order(pytree)
    index: dict[str, int] = {}
    for name in order:
        index.setdefault(name, len(index))
    rename = {name: f"var_{i}" for name, i in index.items()}
    edges: set[tuple[str, str, str]] = set()
    for src, dst in _provenance_pairs(pytree):
        edges.add((rename[src], rename[dst], DATA))
    if with_control:
        for src, dst in _control_pairs(pytree):
            edges.add((rename[src], rename[dst], CONTROL))
    vertices = tuple(f"var_{i}" for i in range(len(index)))
    return DataflowGraph(
        vertices=vertices, edges=frozenset(edges), names=tuple(index)
    )


def extract_dataflow(tree: Ast) -> DataflowGraph:
    """Data-flow graph (value-provenance edges only) of a parsed snippet."""
    return _build(tree, with_control=False)


def extract_pdg(tree: Ast) -> DataflowGraph:
    """Data-flow graph augmented with control-dependence edges."""
    return _build(tree, with_control=True)


def dataflow_match(reference: DataflowGraph, candidate: DataflowGraph) -> tuple[int, int]:
    """Matched candidate data edges and the reference edge count."""
    ref_edges = reference.data_edges
    cand_edges = candidate.data_edges
    return len(ref_edges & cand_edges), len(ref_edges)
