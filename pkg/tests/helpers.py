"""Shared fixtures, random generators, and independent oracles."""

from __future__ import annotations

import random

from amrpara.ctree import ConstituencyTree
from amrpara.graph import INSTANCE, AmrGraph, Triple, Var

FIG1 = """\
(z1 / know
    :ARG0 (z2 / i)
    :ARG1 (z3 / need
        :ARG0 (z4 / they)
        :ARG1 (z5 / documentation
            :mod (z6 / statistic))
        :purpose (z7 / approve
            :ARG0 z4
            :ARG1 (z8 / thing
                :ARG2-of (z9 / price)
                :mod (z10 / this)))))"""

LISTING_Z3 = """\
(z3 / need
    :ARG1-of (z1 / know
        :ARG0 (z2 / i))
    :ARG0 (z4 / they)
    :ARG1 (z5 / documentation
        :mod (z6 / statistic))
    :purpose (z7 / approve
        :ARG0 z4
        :ARG1 (z8 / thing
            :ARG2-of (z9 / price)
            :mod (z10 / this))))"""

LISTING_Z4 = """\
(z4 / they
    :ARG0-of (z3 / need
        :ARG1 (z5 / documentation
            :mod (z6 / statistic))
        :purpose (z7 / approve
            :ARG0 z4
            :ARG1 (z8 / thing
                :ARG2-of (z9 / price)
                :mod (z10 / this)))
        :ARG1-of (z1 / know
            :ARG0 (z2 / i))))"""

SOURCE_SENTENCE = "I know for them to approve this price, they'll need statistical documentation."

_CONCEPTS = ["need", "know", "go", "thing", "person", "city", "want", "say", "dog", "house"]
_ROLES = ["ARG0", "ARG1", "ARG2", "ARG3", "mod", "purpose", "time", "op1", "location"]
_LITERALS = ['"Rome"', "3", "-", "2024", '"a b"']


def random_graph(rng: random.Random, max_nodes: int = 20) -> AmrGraph:
    """A valid random AmrGraph: spanning tree plus extra edges and attributes."""
    n = rng.randint(1, max_nodes)
    variables = [f"z{i + 1}" for i in range(n)]
    triples: list[Triple] = []
    for i, v in enumerate(variables):
        triples.append(Triple(v, INSTANCE, rng.choice(_CONCEPTS)))
        if i > 0:
            parent = variables[rng.randrange(i)]
            role = rng.choice(_ROLES)
            if rng.random() < 0.3:
                triples.append(Triple(v, role + "-of", Var(parent)))
            else:
                triples.append(Triple(parent, role, Var(v)))
    for _ in range(rng.randint(0, max(0, n // 3))):
        u, w = rng.choice(variables), rng.choice(variables)
        if u == w:
            continue
        role = rng.choice(_ROLES)
        if rng.random() < 0.3:
            role += "-of"
        triples.append(Triple(u, role, Var(w)))
    for _ in range(rng.randint(0, 2)):
        triples.append(Triple(rng.choice(variables), rng.choice(["quant", "polarity", "value"]), rng.choice(_LITERALS)))
    top = rng.choice(variables)
    # top must be the source of some triple; its instance triple suffices
    return AmrGraph(top=top, triples=tuple(triples))


_TREE_LABELS = ["S", "NP", "VP", "PP", "X"]


def random_ctree(rng: random.Random, max_nodes: int = 8) -> ConstituencyTree:
    n = rng.randint(1, max_nodes)
    nodes = [ConstituencyTree(rng.choice(_TREE_LABELS)) for _ in range(n)]
    for i in range(1, n):
        nodes[rng.randrange(i)].children.append(nodes[i])
    return nodes[0]


def _flatten_ctree(tree: ConstituencyTree):
    """Preorder list of (label, preorder index, ancestor index set)."""
    out = []

    def walk(node, ancestors):
        idx = len(out)
        out.append((node.label, idx, frozenset(ancestors)))
        for c in node.children:
            if isinstance(c, ConstituencyTree):
                walk(c, ancestors | {idx})

    walk(tree, set())
    return out


def ted_oracle(a: ConstituencyTree, b: ConstituencyTree) -> int:
    """Minimum edit cost by exhaustive enumeration of valid tree mappings.

    A mapping is a one-to-one pairing that preserves the ancestor
    relation and left-to-right order; cost is one per unmapped node on
    either side plus one per mapped pair with differing labels.
    Exponential, only for tiny trees.
    """
    na, nb = _flatten_ctree(a), _flatten_ctree(b)
    best = [len(na) + len(nb)]

    def consistent(i, j, pi, pj):
        ai = pi in na[i][2]  # pi ancestor of i (pi precedes i in preorder)
        bj = pj in nb[j][2]
        if ai != bj:
            return False
        if not ai:
            # neither is an ancestor: left-right order must agree.
            # A is walked in preorder, so pi is already left of i.
            return pj < j and pj not in nb[j][2]
        return True

    def rec(i, pairs, cost):
        bound = cost + max(0, len(nb) - len(pairs) - (len(na) - i))
        if bound >= best[0]:
            return
        if i == len(na):
            best[0] = min(best[0], cost + len(nb) - len(pairs))
            return
        for j in range(len(nb)):
            if any(pj == j for _, pj in pairs):
                continue
            if all(consistent(i, j, pi, pj) for pi, pj in pairs):
                rec(i + 1, pairs + [(i, j)], cost + (na[i][0] != nb[j][0]))
        rec(i + 1, pairs, cost + 1)

    rec(0, [], 0)
    return best[0]


def ted_forest_oracle(a: ConstituencyTree, b: ConstituencyTree) -> int:
    """Forest edit distance by direct memoized recursion.

    Independent of the keyroot-based production implementation; polynomial
    with memoization, so usable on the larger hand-built parse trees.
    """
    from amrpara.ctree import strip_terminals, write_bracketed

    memo = {}

    def size(forest):
        return sum(1 + size(tuple(t.children)) for t in forest)

    def key(forest):
        return tuple(write_bracketed(t) for t in forest)

    def dist(fa, fb):
        if not fa:
            return size(fb)
        if not fb:
            return size(fa)
        k = (key(fa), key(fb))
        if k in memo:
            return memo[k]
        *ra, la = fa
        *rb, lb = fb
        delete = dist(tuple(ra) + tuple(la.children), fb) + 1
        insert = dist(fa, tuple(rb) + tuple(lb.children)) + 1
        match = (
            dist(tuple(ra), tuple(rb))
            + dist(tuple(la.children), tuple(lb.children))
            + (la.label != lb.label)
        )
        memo[k] = best = min(delete, insert, match)
        return best

    return dist((strip_terminals(a),), (strip_terminals(b),))
