"""PENMAN text parsing.

Grammar (roughly)::

    node     := '(' atom '/' atom relation* ')'
    relation := ':role' (node | atom | string)

Bare atoms in target position are resolved after the parse: an atom equal
to a declared variable name is a re-entrant variable mention, anything
else is a constant.  Comment lines starting with ``#`` are skipped;
``# ::key value`` metadata lines are kept as opaque annotations when
reading multi-graph files.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .graph import INSTANCE, AmrGraph, AmrError, Triple, Var, check

_TOKEN_RE = re.compile(
    r"""
    (?P<lparen>\() |
    (?P<rparen>\)) |
    (?P<slash>/) |
    (?P<role>:[^\s()/]+) |
    (?P<string>"(?:[^"\\]|\\.)*") |
    (?P<atom>[^\s()/:]+)
    """,
    re.VERBOSE,
)


class PenmanSyntaxError(AmrError):
    """Parse failure with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        pos = 0
        while pos < len(line):
            if line[pos].isspace():
                pos += 1
                continue
            m = _TOKEN_RE.match(line, pos)
            if m is None:
                raise PenmanSyntaxError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
            tokens.append(_Token(m.lastgroup, m.group(), lineno, m.start() + 1))
            pos = m.end()
    return tokens


@dataclass
class _NodeSketch:
    var: str
    concept: str
    relations: list = field(default_factory=list)  # (role, _NodeSketch | raw target token)


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def _peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("", "", 1, 1)
            raise PenmanSyntaxError(f"unexpected end of input, expected {what}", last.line, last.column + len(last.text))
        if tok.kind != kind:
            raise PenmanSyntaxError(f"expected {what}, found {tok.text!r}", tok.line, tok.column)
        self.i += 1
        return tok

    def parse_node(self) -> _NodeSketch:
        self._expect("lparen", "'('")
        var = self._expect("atom", "variable").text
        self._expect("slash", "'/'")
        concept = self._expect("atom", "concept")
        node = _NodeSketch(var, concept.text)
        while True:
            tok = self._peek()
            if tok is None:
                raise PenmanSyntaxError("unexpected end of input, expected ')' or role", concept.line, concept.column)
            if tok.kind == "rparen":
                self.i += 1
                return node
            role_tok = self._expect("role", "role or ')'")
            role = role_tok.text[1:]
            tgt = self._peek()
            if tgt is None:
                raise PenmanSyntaxError("unexpected end of input, expected role target", role_tok.line, role_tok.column)
            if tgt.kind == "lparen":
                node.relations.append((role, self.parse_node()))
            elif tgt.kind in ("atom", "string"):
                self.i += 1
                node.relations.append((role, tgt.text))
            else:
                raise PenmanSyntaxError(f"expected role target, found {tgt.text!r}", tgt.line, tgt.column)


def parse_penman(text: str) -> AmrGraph:
    """Parse a single PENMAN expression into a validated AmrGraph.

    Triple order follows first-encounter order in the text.  Re-entrant
    variable mentions become edge triples; duplicate instance
    declarations, unconnected components and empty input raise.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise AmrError("empty input: no PENMAN expression found")
    parser = _Parser(tokens)
    root = parser.parse_node()
    trailing = parser._peek()
    if trailing is not None:
        raise PenmanSyntaxError(f"trailing input {trailing.text!r}", trailing.line, trailing.column)

    declared: set[str] = set()

    def collect(node: _NodeSketch):
        declared.add(node.var)
        for _, child in node.relations:
            if isinstance(child, _NodeSketch):
                collect(child)

    collect(root)

    triples: list[Triple] = []

    def emit(node: _NodeSketch):
        triples.append(Triple(node.var, INSTANCE, node.concept))
        for role, child in node.relations:
            if isinstance(child, _NodeSketch):
                triples.append(Triple(node.var, role, Var(child.var)))
                emit(child)
            elif not child.startswith('"') and child in declared:
                triples.append(Triple(node.var, role, Var(child)))
            else:
                triples.append(Triple(node.var, role, child))

    emit(root)
    return check(AmrGraph(top=root.var, triples=tuple(triples)))


@dataclass
class PenmanBlock:
    """One graph in a multi-graph file, with its metadata comment lines."""

    metadata: list[str]
    text: str

    @property
    def graph(self) -> AmrGraph:
        return parse_penman(self.text)


def iter_blocks(text: str):
    """Split multi-graph PENMAN text on blank lines, keeping comments."""
    metadata: list[str] = []
    body: list[str] = []
    for line in text.splitlines():
        if not line.strip():
            if body:
                yield PenmanBlock(metadata, "\n".join(body))
                metadata, body = [], []
            continue
        if line.lstrip().startswith("#"):
            metadata.append(line)
        else:
            body.append(line)
    if body:
        yield PenmanBlock(metadata, "\n".join(body))


def load_blocks(path) -> list[PenmanBlock]:
    with open(path, encoding="utf-8") as f:
        return list(iter_blocks(f.read()))
