"""Lexical tokenizer for Python 3 snippets that never fails.

Splits text by the Python 3 lexical rules (strings, numbers, names,
operators) with a permissive fallback: any character the lexer does not
recognize becomes a single-character ``other`` token.  Generated candidates
are frequently not valid Python, so totality is a hard requirement here.

The grammar is pinned to CPython 3.10: the keyword set and operator table
below are the 3.10 ones.  Whitespace, line structure, and comments are not
tokens and are dropped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

# CPython 3.10 hard keywords (soft keywords like `match` tokenize as names).
KEYWORDS = frozenset(
    """False None True and as assert async await break class continue def del
    elif else except finally for from global if import in is lambda nonlocal
    not or pass raise return try while with yield""".split()
)

# Operators and delimiters, longest first so alternation matches greedily.
_OPERATORS = [
    "**=", "//=", ">>=", "<<=", "...", "!=", ">=", "<=", "==", "->", ":=",
    "+=", "-=", "*=", "/=", "%=", "@=", "&=", "|=", "^=", ">>", "<<", "**",
    "//", "+", "-", "*", "/", "%", "@", "<", ">", "&", "|", "^", "~", "=",
    "(", ")", "[", "]", "{", "}", ",", ":", ".", ";",
]

# Valid 3.10 string prefixes only; an invalid run like `ff` lexes as a name.
_STRING_PREFIX = r"(?:[rR][bB]|[bB][rR]|[rR][fF]|[fF][rR]|[rRbBuUfF])?"
_STRING_BODY = (
    r"'''(?:[^\\]|\\.)*?'''"
    r'|"""(?:[^\\]|\\.)*?"""'
    r"|'(?:[^'\\\n]|\\.)*'"
    r'|"(?:[^"\\\n]|\\.)*"'
)
_NUMBER = (
    r"0[xX][0-9a-fA-F](?:_?[0-9a-fA-F])*"
    r"|0[bB][01](?:_?[01])*"
    r"|0[oO][0-7](?:_?[0-7])*"
    r"|(?:\d(?:_?\d)*)?\.\d(?:_?\d)*(?:[eE][+-]?\d(?:_?\d)*)?[jJ]?"
    r"|\d(?:_?\d)*\.(?:[eE][+-]?\d(?:_?\d)*)?[jJ]?"
    r"|\d(?:_?\d)*(?:[eE][+-]?\d(?:_?\d)*)?[jJ]?"
)

_MASTER = re.compile(
    r"(?P<ws>[ \t\f\r\n]+|\\\r?\n)"
    r"|(?P<comment>#[^\r\n]*)"
    rf"|(?P<string>{_STRING_PREFIX}(?:{_STRING_BODY}))"
    rf"|(?P<number>{_NUMBER})"
    r"|(?P<name>[^\d\W]\w*)"
    rf"|(?P<op>{'|'.join(re.escape(op) for op in _OPERATORS)})"
    r"|(?P<other>.)",
    re.DOTALL,
)

TAG_KEYWORD = "keyword"
TAG_IDENTIFIER = "identifier"
TAG_LITERAL = "literal"
TAG_PUNCTUATION = "punctuation"
TAG_OTHER = "other"


@dataclass(frozen=True)
class Token:
    text: str
    tag: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("empty token")


def tokenize_code(text: str) -> list[Token]:
    """Deterministic, total lexical split of ``text`` into tagged tokens."""
    tokens: list[Token] = []
    for match in _MASTER.finditer(text):
        kind = match.lastgroup
        value = match.group()
        if kind in ("ws", "comment"):
            continue
        if kind == "string" or kind == "number":
            tokens.append(Token(value, TAG_LITERAL))
        elif kind == "name":
            tag = TAG_KEYWORD if value in KEYWORDS else TAG_IDENTIFIER
            tokens.append(Token(value, tag))
        elif kind == "op":
            tokens.append(Token(value, TAG_PUNCTUATION))
        else:
            tokens.append(Token(value, TAG_OTHER))
    return tokens


def token_texts(tokens: Sequence[Token]) -> list[str]:
    return [tok.text for tok in tokens]


def tokenize_texts(text: str) -> list[str]:
    """Token strings only, for metrics that ignore tags."""
    return token_texts(tokenize_code(text))
