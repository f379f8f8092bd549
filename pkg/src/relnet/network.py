"""Relation networks: weighted outcome multisets and single-network queries.

A :class:`RelationNetwork` is immutable.  Build one with a
:class:`NetworkBuilder` (or :func:`learn_stream` for a plain observation
stream).  Weights are :class:`fractions.Fraction`, so every probability
below is exact.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

from .core import Edge, Outcome, ValueId, Variable, canonical_key
from .errors import (
    AllUnobserved,
    OutcomeError,
    UnknownName,
    UnknownValue,
    UnknownVariable,
    ZeroConditionMass,
    ZeroWeight,
)


def as_weight(value) -> Fraction:
    """Coerce ints, fraction/decimal strings and Fractions to a weight.

    Floats go through their shortest repr so ``0.6`` becomes ``3/5``.
    """
    if isinstance(value, float):
        value = repr(value)
    try:
        w = Fraction(value)
    except (TypeError, ValueError) as exc:
        raise ZeroWeight(f"not a weight: {value!r}") from exc
    if w < 0:
        raise ZeroWeight(f"negative weight {w}")
    return w


class RelationNetwork:
    """Variables, relation tags and a map from outcome to positive weight."""

    __slots__ = ("_variables", "_tags", "_outcomes", "_total")

    def __init__(
        self,
        variables: Mapping[str, Variable],
        tags: Iterable[str],
        outcomes: Mapping[Outcome, Fraction],
    ):
        self._variables = dict(sorted(variables.items()))
        self._tags = frozenset(tags)
        checked = {}
        for outcome, weight in outcomes.items():
            weight = as_weight(weight)
            if weight == 0:
                raise ZeroWeight(f"zero weight stored for {outcome}")
            _check_against(outcome, self._variables, self._tags)
            checked[outcome] = weight
        self._outcomes = checked
        self._total = sum(checked.values(), Fraction(0))

    @classmethod
    def _raw(cls, variables, tags, outcomes) -> "RelationNetwork":
        # Skips validation; outcomes already belong to a validated network.
        self = object.__new__(cls)
        self._variables = variables
        self._tags = tags
        self._outcomes = outcomes
        self._total = sum(outcomes.values(), Fraction(0))
        return self

    @property
    def variables(self) -> Mapping[str, Variable]:
        return MappingProxyType(self._variables)

    @property
    def tags(self) -> frozenset[str]:
        return self._tags

    @property
    def outcomes(self) -> Mapping[Outcome, Fraction]:
        return MappingProxyType(self._outcomes)

    @property
    def total(self) -> Fraction:
        """Sum of weights, N."""
        return self._total

    @property
    def is_empty(self) -> bool:
        return not self._outcomes

    def weight(self, outcome: Outcome) -> Fraction:
        return self._outcomes.get(outcome, Fraction(0))

    def probability(self, outcome: Outcome) -> Fraction:
        if not self._total:
            return Fraction(0)
        return self._outcomes.get(outcome, Fraction(0)) / self._total

    def items(self) -> list[tuple[Outcome, Fraction]]:
        """Outcomes with weights in canonical-key order."""
        return sorted(self._outcomes.items(), key=lambda kv: canonical_key(kv[0]))

    def variable(self, name: str) -> Variable:
        try:
            return self._variables[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def with_outcomes(self, outcomes: Mapping[Outcome, Fraction]) -> "RelationNetwork":
        """Same universe, different outcome map (entries must be drawn from this universe)."""
        return RelationNetwork._raw(self._variables, self._tags, dict(outcomes))

    def __len__(self):
        return len(self._outcomes)

    def __iter__(self) -> Iterator[Outcome]:
        return iter(self._outcomes)

    def __eq__(self, other):
        if not isinstance(other, RelationNetwork):
            return NotImplemented
        return (self._variables == other._variables and self._tags == other._tags
                and self._outcomes == other._outcomes)

    def __repr__(self):
        return (f"{type(self).__name__}(variables={list(self._variables)}, "
                f"tags={sorted(self._tags)}, outcomes={len(self._outcomes)}, N={self._total})")

    def describe(self) -> str:
        lines = ["Outcomes:"]
        for outcome, w in self.items():
            p = w / self._total
            lines.append(f"ω = {outcome}, c = {w}, P(ω) = {p}")
        return "\n".join(lines)


def _check_against(outcome: Outcome, variables: Mapping[str, Variable], tags) -> None:
    for n in outcome.nodes:
        var = variables.get(n.variable)
        if var is None:
            raise UnknownName(f"outcome {outcome} uses undeclared variable {n.variable!r}")
        if n.value not in var:
            raise UnknownName(f"outcome {outcome} uses undeclared value {n}")
    for e in outcome.edges:
        if e.tag not in tags:
            raise UnknownName(f"outcome {outcome} uses undeclared relation tag {e.tag!r}")


class NetworkBuilder:
    """Single-writer accumulator of weighted outcomes.

    Variables and tags passed to the constructor are a closed universe:
    outcomes outside it are rejected.  When omitted, they are discovered
    from the outcomes added.
    """

    def __init__(
        self,
        variables: Iterable[Variable] | Mapping[str, Variable] | None = None,
        tags: Iterable[str] | None = None,
    ):
        if isinstance(variables, Mapping):
            variables = variables.values()
        self._declared_vars = None if variables is None else {v.name: v for v in variables}
        self._declared_tags = None if tags is None else set(tags)
        self._seen_values: dict[str, set[str]] = {}
        self._seen_tags: set[str] = set()
        self._counts: dict[Outcome, Fraction] = {}

    def add_outcome(self, outcome: Outcome, weight=1) -> "NetworkBuilder":
        w = as_weight(weight)
        if w == 0:
            raise ZeroWeight(f"refusing zero weight for {outcome}")
        if self._declared_vars is not None:
            for n in outcome.nodes:
                var = self._declared_vars.get(n.variable)
                if var is None or n.value not in var:
                    raise UnknownName(f"{n} is not in the declared universe")
        if self._declared_tags is not None:
            for e in outcome.edges:
                if e.tag not in self._declared_tags:
                    raise UnknownName(f"relation tag {e.tag!r} is not declared")
        for n in outcome.nodes:
            self._seen_values.setdefault(n.variable, set()).add(n.value)
        self._seen_tags.update(e.tag for e in outcome.edges)
        self._counts[outcome] = self._counts.get(outcome, Fraction(0)) + w
        return self

    def add_outcomes(self, pairs: Iterable[tuple[Outcome, object]]) -> "NetworkBuilder":
        for outcome, w in pairs:
            self.add_outcome(outcome, w)
        return self

    def build(self) -> RelationNetwork:
        if self._declared_vars is not None:
            variables = dict(self._declared_vars)
        else:
            variables = {name: Variable(name, sorted(vals))
                         for name, vals in self._seen_values.items()}
        tags = self._declared_tags if self._declared_tags is not None else self._seen_tags
        return RelationNetwork._raw(dict(sorted(variables.items())), frozenset(tags),
                                    dict(self._counts))


def learn_stream(records: Iterable[Outcome], variables=None, tags=None) -> RelationNetwork:
    """Count outcome occurrences in a stream; weights are raw frequencies."""
    builder = NetworkBuilder(variables, tags)
    for i, outcome in enumerate(records):
        try:
            builder.add_outcome(outcome, 1)
        except OutcomeError as exc:
            raise type(exc)(f"record {i}: {exc}") from exc
    return builder.build()


@dataclass
class Distribution:
    """Value -> probability for one variable, unobserved entry last when present."""

    variable: str
    entries: dict[str, Fraction]
    unobserved: str | None = None

    def __getitem__(self, value: str) -> Fraction:
        return self.entries[value]

    def get(self, value, default=None):
        return self.entries.get(value, default)

    def __iter__(self):
        return iter(self.entries)

    def items(self):
        return self.entries.items()

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def observed(self) -> dict[str, Fraction]:
        return {k: v for k, v in self.entries.items() if k != self.unobserved}

    def as_floats(self) -> dict[str, float]:
        return {k: float(v) for k, v in self.entries.items()}


def outcome_distribution(net: RelationNetwork) -> dict[Outcome, Fraction]:
    if net.is_empty:
        return {}
    n = net.total
    return {o: w / n for o, w in net.items()}


def _resolve_value(net: RelationNetwork, value) -> ValueId:
    value = ValueId(*value)
    var = net.variables.get(value.variable)
    if var is None:
        raise UnknownVariable(f"unknown variable {value.variable!r}")
    if value.value not in var:
        raise UnknownValue(f"unknown value {value.value!r} for variable {value.variable!r}")
    return value


def value_probability(net: RelationNetwork, value) -> Fraction:
    """Total probability of the outcomes containing ``value``."""
    value = _resolve_value(net, value)
    if net.is_empty:
        return Fraction(0)
    mass = sum((w for o, w in net.outcomes.items() if value in o.nodes), Fraction(0))
    return mass / net.total


def variable_distribution(net: RelationNetwork, variable: str) -> Distribution:
    """Per-value probabilities plus the residual unobserved mass."""
    var = net.variable(variable)
    mass = dict.fromkeys(var.domain, Fraction(0))
    n = net.total
    if n:
        for o, w in net.outcomes.items():
            val = o.value_of(variable)
            if val is not None:
                mass[val] += w
        entries = {k: m / n for k, m in mass.items()}
    else:
        entries = mass
    entries[var.unobserved] = 1 - sum(entries.values(), Fraction(0))
    return Distribution(variable, entries, var.unobserved)


def normalized_distribution(net: RelationNetwork, variable: str) -> Distribution:
    """Distribution over observable values only, rescaled to sum to one."""
    full = variable_distribution(net, variable)
    observed = full.observed()
    z = sum(observed.values(), Fraction(0))
    if z == 0:
        raise AllUnobserved(f"variable {variable!r} is never observed")
    return Distribution(variable, {k: p / z for k, p in observed.items()})


def relation_conditional(net: RelationNetwork, left, tag: str, right) -> Fraction:
    """P(left |tag right): mass of outcomes holding the tagged edge over P(right)."""
    left = _resolve_value(net, left)
    right = _resolve_value(net, right)
    if tag not in net.tags:
        raise UnknownName(f"unknown relation tag {tag!r}")
    denom = value_probability(net, right)
    if denom == 0:
        raise ZeroConditionMass(f"P({right}) is zero")
    edge = Edge(left, right, tag)
    num = sum((w for o, w in net.outcomes.items() if edge in o.edges), Fraction(0))
    return num / net.total / denom


@dataclass
class FoldedGraph:
    """Variable-level graph: an edge wherever some outcome links two variables' values."""

    variables: list[str]
    edges: dict[tuple[str, str], Counter] = field(default_factory=dict)

    def neighbors(self, variable: str) -> set[str]:
        out = set()
        for a, b in self.edges:
            if a == variable:
                out.add(b)
            elif b == variable:
                out.add(a)
        return out

    def adjacency(self) -> dict[str, set[str]]:
        adj = {v: set() for v in self.variables}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def components(self) -> list[list[str]]:
        adj = self.adjacency()
        seen: set[str] = set()
        comps = []
        for v in self.variables:
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps


def folded_graph(net: RelationNetwork) -> FoldedGraph:
    edges: dict[tuple[str, str], Counter] = {}
    for o in net.outcomes:
        for e in o.edges:
            pair = tuple(sorted((e.a.variable, e.b.variable)))
            edges.setdefault(pair, Counter())[e.tag] += 1
    return FoldedGraph(list(net.variables), dict(sorted(edges.items())))
