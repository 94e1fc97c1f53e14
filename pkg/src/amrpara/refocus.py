"""Re-rooting an AMR graph at a new focus and linearizing the result.

The spanning tree is grown from the new top with stored-orientation
edges taking priority: a depth-first walk repeatedly follows outgoing
edges (in triple order) to unvisited variables, and only when no forward
step is possible does it pick the first stored edge pointing into the
visited region, attach its source through the inverted role, and resume
the forward walk there.  Non-tree edges are never inverted; they
serialize as re-entrant mentions at their stored source.  At the new top
the inverted (former-parent) children are emitted before the original
outgoing ones; everywhere else original outgoing children come first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import INSTANCE, AmrGraph, GraphError, Triple, Var, invert_role
from .tree import Mention, TreeNode, serialize


class FocusError(GraphError):
    """Raised when the requested focus is not an instance-bearing variable."""


def _require_concept(graph: AmrGraph, var: str) -> str:
    concepts = graph.instances()
    if var not in concepts:
        if var in graph.variables():
            raise FocusError(f"variable {var} has no concept and cannot be a focus")
        raise FocusError(f"unknown variable {var}")
    return concepts[var]


def build_spanning_tree(graph: AmrGraph, top: str) -> TreeNode:
    """Build the serialization tree for ``graph`` rooted at ``top``."""
    concepts = graph.instances()
    _require_concept(graph, top)

    nodes: dict[str, TreeNode] = {}
    used: set[int] = set()  # indices of emitted edge triples
    inverted_children: dict[str, list[tuple[str, TreeNode]]] = {}
    edge_indices = [i for i, t in enumerate(graph.triples) if t.is_edge]

    def expand(var: str) -> TreeNode:
        node = TreeNode(var, concepts[var])
        nodes[var] = node
        for i, t in enumerate(graph.triples):
            if t.source != var or t.is_instance:
                continue
            if t.is_attribute:
                node.children.append((t.role, t.target))
                continue
            if i in used:
                continue
            used.add(i)
            target = t.target.name
            if target in nodes:
                node.children.append((t.role, Mention(target)))
            else:
                node.children.append((t.role, expand(target)))
        return node

    root = expand(top)

    # Attach variables unreachable by forward edges, inverting one edge each.
    remaining = [v for v in concepts if v not in nodes]
    while remaining:
        for i in edge_indices:
            t = graph.triples[i]
            if i in used or not isinstance(t.target, Var):
                continue
            if t.target.name in nodes and t.source not in nodes:
                used.add(i)
                parent = nodes[t.target.name]
                child = expand(t.source)
                pair = (invert_role(t.role), child)
                parent.children.append(pair)
                inverted_children.setdefault(parent.var, []).append(pair)
                break
        else:
            missing = ", ".join(sorted(remaining))
            raise GraphError(f"unreachable variables: {missing}")
        remaining = [v for v in concepts if v not in nodes]

    # Emitted-but-unused edges cannot remain on a valid graph, but mentions
    # for edges whose source was expanded before the check are fine.
    leftover = [i for i in edge_indices if i not in used]
    for i in leftover:
        t = graph.triples[i]
        nodes[t.source].children.append((t.role, Mention(t.target.name)))

    inv_at_top = inverted_children.get(top, [])
    if inv_at_top:
        rest = [c for c in root.children if not any(c is p for p in inv_at_top)]
        root.children = list(inv_at_top) + rest
    return root


def _flatten(tree: TreeNode) -> list[Triple]:
    triples: list[Triple] = [Triple(tree.var, INSTANCE, tree.concept)]
    for role, child in tree.children:
        if isinstance(child, TreeNode):
            triples.append(Triple(tree.var, role, Var(child.var)))
            triples.extend(_flatten(child))
        elif isinstance(child, Mention):
            triples.append(Triple(tree.var, role, Var(child.var)))
        else:
            triples.append(Triple(tree.var, role, child))
    return triples


def refocus(graph: AmrGraph, new_top: str) -> AmrGraph:
    """Return the same undirected graph re-rooted at ``new_top``.

    The returned graph's triples are in serialization order, so a plain
    ``serialize`` of it reproduces the re-rooted linearization.
    """
    tree = build_spanning_tree(graph, new_top)
    return AmrGraph(top=new_top, triples=tuple(_flatten(tree)))


def linearize(graph: AmrGraph, indent: int = 4) -> str:
    """Serialize a graph from its own top."""
    return serialize(build_spanning_tree(graph, graph.top), graph, indent=indent)


def enumerate_foci(graph: AmrGraph, k: int, seed) -> list[str]:
    """Sample up to ``k`` distinct non-top focus variables, reproducibly."""
    if k < 1:
        raise ValueError("k must be >= 1")
    eligible = [v for v in graph.instances() if v != graph.top]
    rng = random.Random(seed)
    return rng.sample(eligible, min(k, len(eligible)))


@dataclass(frozen=True)
class FocusVariant:
    """One re-rooted graph together with its linearized form."""

    focus: str
    graph: AmrGraph
    linearized: str


def variants(graph: AmrGraph, k: int, seed, foci: list[str] | None = None) -> list[FocusVariant]:
    """Generate re-rooted, linearized variants for sampled (or given) foci."""
    chosen = foci if foci is not None else enumerate_foci(graph, k, seed)
    out = []
    for focus in chosen:
        refocused = refocus(graph, focus)
        out.append(FocusVariant(focus, refocused, linearize(refocused)))
    return out
