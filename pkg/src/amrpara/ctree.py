"""Constituency trees read from PTB-style bracketed text.

Children are either nested trees or terminal token strings.  Nonterminals
with no children at all are allowed (template trees like
``(ROOT(S(NP)(VP)(.)))`` use them).
"""

from __future__ import annotations

from dataclasses import dataclass, field


class BracketError(ValueError):
    """Malformed bracketed parse text."""


@dataclass
class ConstituencyTree:
    label: str
    children: list = field(default_factory=list)  # ConstituencyTree | str (terminal token)

    def size(self) -> int:
        """Number of labeled nodes, terminals excluded."""
        return 1 + sum(c.size() for c in self.children if isinstance(c, ConstituencyTree))

    def height(self) -> int:
        subtrees = [c for c in self.children if isinstance(c, ConstituencyTree)]
        return 1 + (max(s.height() for s in subtrees) if subtrees else 0)


def parse_bracketed(text: str) -> ConstituencyTree:
    """Read one bracketed tree, e.g. ``(ROOT (S (NP (PRP I)) (VP (VBP know))))``."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    if not tokens:
        raise BracketError("empty input")
    pos = 0

    def parse_node() -> ConstituencyTree:
        nonlocal pos
        if tokens[pos] != "(":
            raise BracketError(f"expected '(' at token {pos}: {tokens[pos]!r}")
        pos += 1
        if pos >= len(tokens) or tokens[pos] in "()":
            raise BracketError(f"missing label at token {pos}")
        node = ConstituencyTree(tokens[pos])
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            if tokens[pos] == "(":
                node.children.append(parse_node())
            else:
                node.children.append(tokens[pos])
                pos += 1
        if pos >= len(tokens):
            raise BracketError("unbalanced parentheses: missing ')'")
        pos += 1
        return node

    tree = parse_node()
    if pos != len(tokens):
        raise BracketError(f"trailing input at token {pos}")
    return tree


def write_bracketed(tree: ConstituencyTree) -> str:
    parts = [write_bracketed(c) if isinstance(c, ConstituencyTree) else c for c in tree.children]
    body = " ".join([tree.label] + parts)
    return f"({body})"


def strip_terminals(tree: ConstituencyTree) -> ConstituencyTree:
    """Drop terminal tokens, keeping the nonterminal skeleton."""
    kids = [strip_terminals(c) for c in tree.children if isinstance(c, ConstituencyTree)]
    return ConstituencyTree(tree.label, kids)


def truncate_depth(tree: ConstituencyTree, d: int) -> ConstituencyTree:
    """Keep only the top ``d`` layers (root is layer 1).

    Terminal tokens count one layer below their parent, so a terminal
    survives only if its parent sits strictly above the cut.
    """
    if d < 1:
        raise ValueError("depth must be >= 1")

    def cut(node: ConstituencyTree, layer: int) -> ConstituencyTree:
        out = ConstituencyTree(node.label)
        if layer < d:
            for c in node.children:
                out.children.append(cut(c, layer + 1) if isinstance(c, ConstituencyTree) else c)
        return out

    return cut(tree, 1)
