"""Ordered tree edit distance (Zhang & Shasha) with unit costs.

Distances are computed over the nonterminal skeleton: terminal tokens
are stripped before comparison, and insert/delete/relabel all cost 1.
"""

from __future__ import annotations

from .ctree import ConstituencyTree, strip_terminals, truncate_depth


class _Annotated:
    """Postorder numbering, leftmost-leaf-descendant table, and keyroots."""

    def __init__(self, tree: ConstituencyTree):
        self.labels: list[str] = []
        self.lld: list[int] = []

        def walk(node: ConstituencyTree) -> int:
            child_llds = [walk(c) for c in node.children if isinstance(c, ConstituencyTree)]
            idx = len(self.labels)
            self.labels.append(node.label)
            self.lld.append(child_llds[0] if child_llds else idx)
            return self.lld[idx]

        walk(tree)
        n = len(self.labels)
        seen: set[int] = set()
        self.keyroots = []
        for i in range(n - 1, -1, -1):
            if self.lld[i] not in seen:
                seen.add(self.lld[i])
                self.keyroots.append(i)
        self.keyroots.reverse()


def ted(a: ConstituencyTree, b: ConstituencyTree) -> int:
    """Zhang-Shasha edit distance between terminal-stripped trees."""
    ta, tb = _Annotated(strip_terminals(a)), _Annotated(strip_terminals(b))
    m, n = len(ta.labels), len(tb.labels)
    treedist = [[0] * n for _ in range(m)]

    for i in ta.keyroots:
        for j in tb.keyroots:
            li, lj = ta.lld[i], tb.lld[j]
            rows, cols = i - li + 2, j - lj + 2
            fd = [[0] * cols for _ in range(rows)]
            for x in range(1, rows):
                fd[x][0] = fd[x - 1][0] + 1
            for y in range(1, cols):
                fd[0][y] = fd[0][y - 1] + 1
            for x in range(1, rows):
                for y in range(1, cols):
                    ai, bj = li + x - 1, lj + y - 1
                    if ta.lld[ai] == li and tb.lld[bj] == lj:
                        relabel = 0 if ta.labels[ai] == tb.labels[bj] else 1
                        fd[x][y] = min(
                            fd[x - 1][y] + 1,
                            fd[x][y - 1] + 1,
                            fd[x - 1][y - 1] + relabel,
                        )
                        treedist[ai][bj] = fd[x][y]
                    else:
                        xa = ta.lld[ai] - li
                        yb = tb.lld[bj] - lj
                        fd[x][y] = min(
                            fd[x - 1][y] + 1,
                            fd[x][y - 1] + 1,
                            fd[xa][yb] + treedist[ai][bj],
                        )
    return treedist[m - 1][n - 1]


def ted3(a: ConstituencyTree, b: ConstituencyTree) -> int:
    """Edit distance over the top three layers only."""
    return ted(truncate_depth(a, 3), truncate_depth(b, 3))


def tedf(a: ConstituencyTree, b: ConstituencyTree) -> int:
    """Edit distance over the full terminal-stripped trees."""
    return ted(a, b)
