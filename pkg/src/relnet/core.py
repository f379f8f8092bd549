"""Values, variables, relation tags and outcome graphs.

An outcome is a connected graph whose vertices are values of distinct
variables and whose edges are typed relations between pairs of values.
Values are globally named (``variable``, ``value``), so outcome identity is
plain labeled-set equality: two outcomes are equal iff their node sets and
edge sets are equal.

Edges are unordered pairs plus a tag.  Any direction ("2 after 1") lives in
the tag name, never in endpoint order.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence
from typing import NamedTuple

from .errors import (
    DanglingEdgeIndex,
    Disconnected,
    DuplicateVariable,
    OutcomeError,
    UnknownName,
    UnobservedValueUsed,
)

UNOBSERVED = "u"


class ValueId(NamedTuple):
    variable: str
    value: str

    def __str__(self):
        return f"{self.variable}_{self.value}"


class Variable:
    """A discrete random variable with an ordered, nonempty domain.

    The unobserved value is synthetic: it is never part of ``domain`` and
    never appears inside an outcome, only in distributions.
    """

    __slots__ = ("name", "domain", "unobserved")

    def __init__(self, name: str, domain: Iterable[str], unobserved: str = UNOBSERVED):
        domain = tuple(domain)
        if not domain:
            raise ValueError(f"variable {name!r} needs a nonempty domain")
        if len(set(domain)) != len(domain):
            raise ValueError(f"variable {name!r} has repeated values in {domain!r}")
        if unobserved in domain:
            raise UnobservedValueUsed(
                f"variable {name!r}: {unobserved!r} is reserved for the unobserved value")
        self.name = name
        self.domain = domain
        self.unobserved = unobserved

    def values(self) -> list[ValueId]:
        return [ValueId(self.name, v) for v in self.domain]

    def __contains__(self, value: str) -> bool:
        return value in self.domain

    def __eq__(self, other):
        if not isinstance(other, Variable):
            return NotImplemented
        return (self.name, self.domain, self.unobserved) == (
            other.name, other.domain, other.unobserved)

    def __hash__(self):
        return hash((self.name, self.domain, self.unobserved))

    def __repr__(self):
        return f"Variable({self.name!r}, {list(self.domain)!r})"


class _EdgeBase(NamedTuple):
    a: ValueId
    b: ValueId
    tag: str


class Edge(_EdgeBase):
    """Unordered value pair with a relation tag; endpoints are stored sorted."""

    __slots__ = ()

    def __new__(cls, x: ValueId, y: ValueId, tag: str):
        x, y = ValueId(*x), ValueId(*y)
        if x.variable == y.variable:
            raise OutcomeError(f"edge {x}-{y} joins two values of one variable")
        if y < x:
            x, y = y, x
        return super().__new__(cls, x, y, tag)

    @property
    def endpoints(self) -> frozenset[ValueId]:
        return frozenset((self.a, self.b))

    def __str__(self):
        return f"({self.a})--{{{self.tag}}}--({self.b})"


def _is_connected(nodes, edges) -> bool:
    if len(nodes) <= 1:
        return True
    adj = {n: [] for n in nodes}
    for e in edges:
        adj[e.a].append(e.b)
        adj[e.b].append(e.a)
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        for m in adj[stack.pop()]:
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return len(seen) == len(nodes)


class Outcome:
    """Immutable connected outcome graph.

    Construct through :func:`make_outcome` for index-based input, or
    directly from values and :class:`Edge` objects.
    """

    __slots__ = ("nodes", "edges", "_variables", "_hash")

    def __init__(self, nodes: Iterable[ValueId] = (), edges: Iterable[Edge] = ()):
        nodes = frozenset(ValueId(*n) for n in nodes)
        edges = frozenset(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        variables = [n.variable for n in nodes]
        if len(set(variables)) != len(variables):
            dup = sorted({v for v in variables if variables.count(v) > 1})
            raise DuplicateVariable(f"more than one value for variable(s) {dup}")
        for e in edges:
            if e.a not in nodes or e.b not in nodes:
                raise OutcomeError(f"edge {e} has an endpoint outside the outcome")
        if not _is_connected(nodes, edges):
            raise Disconnected(f"outcome over {sorted(map(str, nodes))} is not connected")
        self._init(nodes, edges)

    def _init(self, nodes, edges, variables=None):
        self.nodes = nodes
        self.edges = edges
        self._variables = frozenset([n.variable for n in nodes]) if variables is None else variables
        self._hash = hash((nodes, edges))

    @classmethod
    def _trusted(cls, nodes: frozenset, edges: frozenset, variables=None) -> "Outcome":
        # Caller guarantees validity; used by enumeration and joins.
        self = object.__new__(cls)
        self._init(nodes, edges, variables)
        return self

    @property
    def variables(self) -> frozenset[str]:
        return self._variables

    @property
    def is_empty(self) -> bool:
        return not self.nodes

    def value_of(self, variable: str) -> str | None:
        for n in self.nodes:
            if n.variable == variable:
                return n.value
        return None

    def assignment(self) -> dict[str, str]:
        return {n.variable: n.value for n in self.nodes}

    def __eq__(self, other):
        if not isinstance(other, Outcome):
            return NotImplemented
        return self._hash == other._hash and self.nodes == other.nodes and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self.nodes:
            return "K0"
        if not self.edges:
            (n,) = self.nodes
            return f"{{({n})}}"
        return "{" + "; ".join(str(e) for e in sorted(self.edges)) + "}"

    def __repr__(self):
        return f"Outcome({self})"


K0 = Outcome()


def make_outcome(
    nodes: Sequence[tuple[str, str]],
    edges: Sequence[tuple[int, int, str]] = (),
    variables: Mapping[str, Variable] | None = None,
    tags: Iterable[str] | None = None,
) -> Outcome:
    """Build an outcome from ``(variable, value)`` nodes and index-based edges.

    When ``variables`` / ``tags`` are given, every name must resolve
    against them; otherwise names are accepted as-is.
    """
    values = [ValueId(*n) for n in nodes]
    tagset = None if tags is None else set(tags)
    for v in values:
        if variables is not None:
            var = variables.get(v.variable)
            if var is None:
                raise UnknownName(f"unknown variable {v.variable!r}")
            if v.value == var.unobserved:
                raise UnobservedValueUsed(f"{v} is the unobserved value of {v.variable!r}")
            if v.value not in var:
                raise UnknownName(f"unknown value {v.value!r} for variable {v.variable!r}")
        elif v.value == UNOBSERVED:
            raise UnobservedValueUsed(f"{v} names the unobserved value")
    built = []
    for i, j, tag in edges:
        for idx in (i, j):
            if not 0 <= idx < len(values):
                raise DanglingEdgeIndex(f"edge index {idx} out of range for {len(values)} nodes")
        if tagset is not None and tag not in tagset:
            raise UnknownName(f"unknown relation tag {tag!r}")
        if i == j:
            raise OutcomeError("self-loops are not allowed")
        built.append(Edge(values[i], values[j], tag))
    return Outcome(values, built)


def is_subgraph(candidate: Outcome, host: Outcome) -> bool:
    return candidate.nodes <= host.nodes and candidate.edges <= host.edges


def variables_of(outcome: Outcome) -> frozenset[str]:
    return outcome.variables


def canonical_key(outcome: Outcome) -> bytes:
    nodes = sorted(outcome.nodes)
    edges = sorted(outcome.edges)
    doc = [[list(n) for n in nodes], [[list(e.a), list(e.b), e.tag] for e in edges]]
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False).encode("utf-8")
