"""Grammar-labelled syntax trees for Python snippets.

Trees are produced by the interpreter's own parser (the ``ast`` module), so
the grammar is pinned to the running CPython version; the package requires
3.10+.  The interpreter tree is converted into a plain ordered tree of
``Ast`` nodes:

* node label = grammar production name (``Module``, ``Assign``, ``Name`` ...);
* expression contexts (``Load``/``Store``/``Del``) are dropped as bookkeeping;
* string-valued fields become leaf values (``Name`` collapses onto a leaf
  carrying the identifier, ``Constant`` carries the repr of its value; other
  primitive string fields become leaf children labelled by field name);
* int/bool structural flags (``ImportFrom.level`` etc.) are dropped.

Parsing is total: a snippet that is not valid Python yields ``None`` rather
than an exception, which downstream metrics use as the "not applicable"
signal.
"""

from __future__ import annotations

import ast as _pyast
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterator

_DROPPED_NODES = (_pyast.Load, _pyast.Store, _pyast.Del)


@dataclass(frozen=True)
class Ast:
    label: str
    children: tuple["Ast", ...] = ()
    value: str | None = None
    # original interpreter node, kept for data-flow extraction
    pynode: Any = field(default=None, compare=False, repr=False)

    def size(self) -> int:
        return 1 + sum(child.size() for child in self.children)

    def iter_nodes(self) -> Iterator["Ast"]:
        yield self
        for child in self.children:
            yield from child.iter_nodes()

    def signature(self) -> tuple[str, str | None]:
        return (self.label, self.value)


def parse_ast(text: str) -> Ast | None:
    """Parse ``text`` as Python; return the converted tree or ``None``."""
    try:
        tree = _pyast.parse(text)
    except (SyntaxError, ValueError, MemoryError, RecursionError):
        return None
    return _convert(tree)


def _convert(node: _pyast.AST) -> Ast:
    if isinstance(node, _pyast.Constant):
        return Ast("Constant", value=repr(node.value), pynode=node)
    children: list[Ast] = []
    n_primitives = 0
    for name in node._fields:
        value = getattr(node, name, None)
        if value is None:
            continue
        if isinstance(value, _pyast.AST):
            if not isinstance(value, _DROPPED_NODES):
                children.append(_convert(value))
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, _pyast.AST):
                    if not isinstance(item, _DROPPED_NODES):
                        children.append(_convert(item))
                elif isinstance(item, str):
                    children.append(Ast(name, value=item))
                    n_primitives += 1
        elif isinstance(value, str):
            children.append(Ast(name, value=value))
            n_primitives += 1
        # int/bool flags dropped
    if n_primitives == 1 and len(children) == 1:
        # single string field, nothing else: collapse onto the node (Name ...)
        return Ast(type(node).__name__, value=children[0].value, pynode=node)
    return Ast(type(node).__name__, children=tuple(children), pynode=node)


def extract_subtrees(tree: Ast) -> Counter:
    """Multiset of canonical encodings of every rooted subtree, with leaf
    values disregarded so only the grammar shape is compared."""
    counts: Counter = Counter()
    _collect(tree, counts)
    return counts


def _collect(node: Ast, counts: Counter) -> str:
    encoding = "(" + node.label
    for child in node.children:
        encoding += " " + _collect(child, counts)
    encoding += ")"
    counts[encoding] += 1
    return encoding


def subtree_match(reference: Counter, candidate: Counter) -> tuple[int, int]:
    """Clipped count of candidate subtrees found in the reference, and the
    total reference subtree count (the match denominator)."""
    matched = sum(min(count, reference[key]) for key, count in candidate.items())
    return matched, sum(reference.values())
