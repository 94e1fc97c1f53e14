"""Core AMR graph model: variables, roles, triples, and graph-level checks.

An AMR graph is stored as an ordered list of triples together with a
designated top variable.  Triples come in three flavours:

* instance triples ``(var, "instance", concept)`` declaring a variable,
* edge triples ``(var, role, Var(other))`` relating two variables,
* attribute triples ``(var, role, constant)`` attaching a literal.

Edges may be stored in inverted orientation (role ending in ``-of``);
``normalize_edge`` maps every edge to its base orientation, which is what
graph equality is defined over.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

INSTANCE = "instance"

#: Roles that never take part in the ``-of`` inversion algebra.
DEFAULT_NON_INVERTIBLE = frozenset({INSTANCE})


class AmrError(Exception):
    """Base class for all errors raised by this package's AMR handling."""


class RoleError(AmrError):
    """Raised when a role cannot be inverted."""


class GraphError(AmrError):
    """Raised when a graph violates a structural invariant."""


@dataclass(frozen=True)
class Var:
    """A reference to a variable, e.g. the re-entrant ``z4`` mention."""

    name: str

    def __post_init__(self):
        if not self.name or any(c in self.name for c in " \t\n()/:\"") :
            raise GraphError(f"invalid variable name: {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Triple:
    """One (source, role, target) unit.

    ``target`` is a ``Var`` for edges, and a plain string for concepts
    (instance triples) and literal constants (attribute triples).
    Quoted string literals keep their surrounding double quotes.
    """

    source: str
    role: str
    target: Var | str

    @property
    def is_instance(self) -> bool:
        return self.role == INSTANCE

    @property
    def is_edge(self) -> bool:
        return isinstance(self.target, Var)

    @property
    def is_attribute(self) -> bool:
        return not self.is_edge and not self.is_instance


def is_inverted_role(role: str, non_invertible: frozenset[str] = DEFAULT_NON_INVERTIBLE) -> bool:
    return role.endswith("-of") and role not in non_invertible


def invert_role(role: str, non_invertible: frozenset[str] = DEFAULT_NON_INVERTIBLE) -> str:
    """Toggle the ``-of`` suffix: ``ARG1`` <-> ``ARG1-of``.

    The rule is applied uniformly to every role outside the non-invertible
    registry, so inversion is an involution.
    """
    if role in non_invertible:
        raise RoleError(f"role {role!r} is not invertible")
    if role.endswith("-of"):
        return role[: -len("-of")]
    return role + "-of"


def normalize_edge(triple: Triple, non_invertible: frozenset[str] = DEFAULT_NON_INVERTIBLE) -> Triple:
    """Return the base-orientation form of an edge triple.

    ``(z1, ARG1-of, z3)`` becomes ``(z3, ARG1, z1)``; triples already in
    base orientation (and instance/attribute triples) pass through.
    Idempotent.
    """
    if triple.is_edge and is_inverted_role(triple.role, non_invertible):
        assert isinstance(triple.target, Var)
        return Triple(triple.target.name, invert_role(triple.role, non_invertible), Var(triple.source))
    return triple


@dataclass(frozen=True)
class AmrGraph:
    """A variable-labeled directed multigraph with a designated top.

    Immutable after construction; all operations on graphs are pure
    functions returning new graphs.
    """

    top: str
    triples: tuple[Triple, ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(self.triples))

    def instances(self) -> dict[str, str]:
        """Map each variable to its concept, in declaration order."""
        out: dict[str, str] = {}
        for t in self.triples:
            if t.is_instance:
                out[t.source] = t.target  # type: ignore[assignment]
        return out

    def variables(self) -> set[str]:
        vs = set()
        for t in self.triples:
            vs.add(t.source)
            if isinstance(t.target, Var):
                vs.add(t.target.name)
        return vs

    def edges(self) -> list[Triple]:
        return [t for t in self.triples if t.is_edge]

    def attributes(self) -> list[Triple]:
        return [t for t in self.triples if t.is_attribute]


@dataclass(frozen=True)
class Violation:
    """A named invariant violation, pointing at the offending piece."""

    rule: str
    detail: str

    def __str__(self):
        return f"{self.rule}: {self.detail}"


def validate(graph: AmrGraph) -> list[Violation]:
    """Check every AmrGraph invariant; empty list means the graph is valid."""
    violations: list[Violation] = []
    seen_instances: Counter[str] = Counter(t.source for t in graph.triples if t.is_instance)
    all_vars = graph.variables()

    for var, n in seen_instances.items():
        if n > 1:
            violations.append(Violation("duplicate-instance", f"variable {var} declared {n} times"))
    for var in sorted(all_vars - set(seen_instances)):
        violations.append(Violation("missing-instance", f"variable {var} has no instance triple"))

    if graph.top not in all_vars:
        violations.append(Violation("unknown-top", f"top {graph.top} does not appear in any triple"))
    elif not any(t.source == graph.top for t in graph.triples):
        violations.append(Violation("top-not-source", f"top {graph.top} is never a triple source"))

    # weak connectivity from top
    if graph.top in all_vars:
        adj: dict[str, set[str]] = {v: set() for v in all_vars}
        for t in graph.triples:
            if t.is_edge:
                adj[t.source].add(t.target.name)
                adj[t.target.name].add(t.source)
        reached = {graph.top}
        stack = [graph.top]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in reached:
                    reached.add(nxt)
                    stack.append(nxt)
        for var in sorted(all_vars - reached):
            violations.append(Violation("unreachable", f"variable {var} not connected to top {graph.top}"))

    return violations


def check(graph: AmrGraph) -> AmrGraph:
    """Validate and return the graph, raising GraphError on any violation."""
    violations = validate(graph)
    if violations:
        raise GraphError("; ".join(str(v) for v in violations))
    return graph


def normalized_triples(graph: AmrGraph) -> Counter:
    """Multiset of triples with every edge in base orientation."""
    return Counter(normalize_edge(t) for t in graph.triples)


def graph_equal(a: AmrGraph, b: AmrGraph) -> bool:
    """True iff the two graphs have equal normalized triple multisets.

    Top and triple ordering are deliberately ignored: re-focusing changes
    both while preserving the undirected structure.
    """
    return normalized_triples(a) == normalized_triples(b)
