"""The PENMAN serialization tree and its text writer.

A ``TreeNode`` expands a variable exactly once (giving its ``/ concept``);
re-entrant references appear as ``Mention`` leaves, constants as plain
strings.  The writer emits one role per line with child indentation
strictly greater than the parent's; the serialization contract is the
token stream, not the raw whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import AmrGraph, GraphError


@dataclass
class Mention:
    """A bare re-entrant variable reference."""

    var: str


@dataclass
class TreeNode:
    """An expanded variable with its ordered (role, child) pairs."""

    var: str
    concept: str
    children: list[tuple[str, "TreeNode | Mention | str"]] = field(default_factory=list)

    def expanded_vars(self) -> list[str]:
        out = [self.var]
        for _, child in self.children:
            if isinstance(child, TreeNode):
                out.extend(child.expanded_vars())
        return out


def serialize(tree: TreeNode, graph: AmrGraph | None = None, indent: int = 4) -> str:
    """Write a PENMAN tree as indented text.

    When ``graph`` is given, every variable in the tree must exist in the
    graph; unknown variables raise GraphError.
    """
    if graph is not None:
        known = graph.variables()
        for var in tree.expanded_vars():
            if var not in known:
                raise GraphError(f"tree references variable {var} absent from graph")

    lines: list[str] = []

    def emit(node: TreeNode, depth: int) -> str:
        head = f"({node.var} / {node.concept}"
        parts = [head]
        pad = " " * (indent * (depth + 1))
        for role, child in node.children:
            if isinstance(child, TreeNode):
                parts.append(f"{pad}:{role} {emit(child, depth + 1)}")
            elif isinstance(child, Mention):
                parts.append(f"{pad}:{role} {child.var}")
            else:
                parts.append(f"{pad}:{role} {child}")
        return "\n".join(parts) + ")"

    return emit(tree, 0)


def token_stream(text: str) -> list[str]:
    """Tokenize PENMAN text for whitespace-insensitive comparison."""
    out: list[str] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()/":
            out.append(c)
            i += 1
        elif c == '"':
            j = i + 1
            while j < len(text) and text[j] != '"':
                j += 2 if text[j] == "\\" else 1
            out.append(text[i : j + 1])
            i = j + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()/":
                j += 1
            out.append(text[i:j])
            i = j
    return out
