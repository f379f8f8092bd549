"""Conditioning, factorization, full-joint construction and inference.

The joint is built by the factor-product procedure: variables are visited
one at a time, the factors mentioning the current variable are merged value
by value, and combinations that disagree on a shared variable are dropped.
A factor with no outcome for the current value is skipped for that value
(it contributes weight 1), which is what lets partial observations such as
``t1 -r1- t2`` survive the join.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ._kernels import consistent_combinations
from .core import Outcome, ValueId, is_subgraph
from .errors import ContradictoryEvidence, EmptyJoint, NotFactorized, UnknownValue, UnknownVariable
from .network import (
    Distribution,
    RelationNetwork,
    _check_against,
    folded_graph,
    variable_distribution,
)


class JointNetwork(RelationNetwork):
    """Network whose outcomes each span every variable that occurs in its source.

    ``constructed`` is True for joints produced by :func:`join_full`: the
    rows are an estimate assembled from factors, not observed outcomes.
    """

    __slots__ = ()
    constructed = True


@dataclass
class Factor:
    scope: frozenset[str]
    outcomes: dict[Outcome, Fraction]

    def __len__(self):
        return len(self.outcomes)


@dataclass
class FactorizationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def condition(net: RelationNetwork, evidence: Outcome) -> RelationNetwork:
    """Drop outcomes that contradict ``evidence``.

    An outcome is kept when it shares no variable with the evidence, or when
    the evidence (values and edges) is a subgraph of it.  Weights are kept
    as-is; probabilities renormalize through the reduced total.  An empty
    result is returned, not raised; check ``is_empty``.
    """
    _check_against(evidence, net.variables, net.tags)
    ev_vars = evidence.variables
    kept = {o: w for o, w in net.outcomes.items()
            if not (ev_vars & o.variables) or is_subgraph(evidence, o)}
    return type(net)._raw(net._variables, net._tags, kept)


def is_factorized(net: RelationNetwork) -> FactorizationReport:
    """Check the factorized-network conditions and list every violation.

    * no empty outcome K0;
    * outcomes grouped by variable set form factors of uniform scope;
    * no edge instance is shared by two distinct outcomes.  Outcomes of one
      factor that assign different values are cells of the same table and
      may share edges over their common values (star and clique embeddings
      do this); sharing is a violation across factors, or between two
      outcomes over the same values.
    """
    violations = []
    outcomes = list(net.outcomes)
    if any(o.is_empty for o in outcomes):
        violations.append("contains the empty outcome K0")
    for f in _group(outcomes):
        if any(o.variables != f.scope for o in f.outcomes):
            violations.append(f"factor {sorted(f.scope)} mixes scopes")
    holders: dict = {}
    for o in outcomes:
        for e in o.edges:
            holders.setdefault(e, []).append(o)
    for e, owners in holders.items():
        if len(owners) < 2:
            continue
        for i in range(len(owners)):
            for j in range(i + 1, len(owners)):
                x, y = owners[i], owners[j]
                if x.variables != y.variables or x.nodes == y.nodes:
                    violations.append(f"edge {e} shared by {x} and {y}")
    return FactorizationReport(not violations, violations)


def _group(outcomes) -> list[Factor]:
    groups: dict[frozenset, dict] = {}
    for o in outcomes:
        groups.setdefault(o.variables, {})[o] = None
    return [Factor(scope, members) for scope, members in
            sorted(groups.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]


def _require_factorized(net: RelationNetwork) -> None:
    report = is_factorized(net)
    if not report:
        raise NotFactorized("network is not factorized: " + "; ".join(report.violations[:3]),
                            report.violations)


def split_factors(net: RelationNetwork) -> list[Factor]:
    """Group outcomes by exact variable set."""
    _require_factorized(net)
    groups: dict[frozenset, dict] = {}
    for o, w in net.outcomes.items():
        groups.setdefault(o.variables, {})[o] = w
    return [Factor(scope, members) for scope, members in
            sorted(groups.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]


def _union(parts: Sequence[Outcome]) -> Outcome:
    nodes = frozenset().union(*(p.nodes for p in parts))
    edges = frozenset().union(*(p.edges for p in parts))
    return Outcome._trusted(nodes, edges)


def join_full(net: RelationNetwork, order: Sequence[str] | None = None) -> JointNetwork:
    """Full joint by factor product.

    ``order`` is the variable visiting order (default: sorted names); the
    normalized result does not depend on it.  If the network falls apart
    into independent pieces, each piece is joined separately and the pieces
    are combined by cross product (those rows are not connected graphs).
    """
    factors = [f.outcomes for f in split_factors(net)]
    names = list(net.variables)
    if order is None:
        order = sorted(names)
    elif sorted(order) != sorted(names):
        raise ValueError(f"order {list(order)} is not a permutation of {names}")
    slot = {v: i for i, v in enumerate(names)}
    index = {v: {val: j for j, val in enumerate(net.variables[v].domain)} for v in names}
    width = len(names)

    def encode(o: Outcome):
        row = [-1] * width
        for n in o.nodes:
            row[slot[n.variable]] = index[n.variable][n.value]
        return row

    for var in order:
        gathered = [i for i, f in enumerate(factors) if any(var in o.variables for o in f)]
        if not gathered:
            continue
        joined: dict[Outcome, Fraction] = {}
        for value in net.variables[var].domain:
            vid = ValueId(var, value)
            choices = []
            for i in gathered:
                sel = [(o, w) for o, w in factors[i].items() if vid in o.nodes]
                if sel:
                    choices.append(sel)
            if not choices:
                continue
            encoded = [[encode(o) for o, _ in sel] for sel in choices]
            for combo in consistent_combinations(encoded):
                parts = [choices[k][idx] for k, idx in enumerate(combo)]
                weight = Fraction(1)
                for _, w in parts:
                    weight *= w
                joint = _union([o for o, _ in parts])
                joined[joint] = joined.get(joint, Fraction(0)) + weight
        factors = [f for i, f in enumerate(factors) if i not in gathered]
        if joined:
            factors.append(joined)

    rows: dict[Outcome, Fraction] = {}
    if factors:
        for combo in product(*(list(f.items()) for f in factors)):
            weight = Fraction(1)
            for _, w in combo:
                weight *= w
            joint = combo[0][0] if len(combo) == 1 else _union([o for o, _ in combo])
            rows[joint] = rows.get(joint, Fraction(0)) + weight
    return JointNetwork._raw(net._variables, net._tags, rows)


def joint_marginals(joint: RelationNetwork, variables: Iterable[str] | None = None
                    ) -> dict[str, Distribution]:
    if joint.is_empty:
        raise EmptyJoint("joint network has no outcomes")
    names = list(joint.variables) if variables is None else list(variables)
    return {v: variable_distribution(joint, v) for v in names}


def evidence_outcome(net: RelationNetwork, variable: str, value: str) -> Outcome:
    var = net.variables.get(variable)
    if var is None:
        raise UnknownVariable(f"unknown variable {variable!r}")
    if value not in var:
        raise UnknownValue(f"unknown value {value!r} for variable {variable!r}")
    return Outcome([ValueId(variable, value)])


def infer(
    net: RelationNetwork,
    assignments: Iterable[tuple[str, str]] = (),
    query: Iterable[str] | None = None,
    order: Sequence[str] | None = None,
) -> dict[str, Distribution]:
    """Condition on each single-value assignment in turn, join, read marginals."""
    _require_factorized(net)
    for variable, value in assignments:
        net = condition(net, evidence_outcome(net, variable, value))
        if net.is_empty:
            raise ContradictoryEvidence(f"no outcome survives {variable}={value}")
    if query is not None:
        query = list(query)
        for q in query:
            net.variable(q)
    joint = join_full(net, order)
    if joint.is_empty:
        raise ContradictoryEvidence("evidence leaves no consistent joint row")
    return joint_marginals(joint, query)


def conditionally_independent(net: RelationNetwork, a: str, b: str,
                              given: Iterable[str] = ()) -> bool:
    """Path-blocking test on the folded graph.

    Every simple path from ``a`` to ``b`` must pass through an observed
    variable ``z`` such that no outcome spans ``z`` together with both of
    its neighbours on that path.
    """
    given = set(given)
    for v in (a, b, *given):
        net.variable(v)
    if a == b:
        raise ValueError("a and b must differ")
    if a in given or b in given:
        raise ValueError("a and b must not be in the conditioning set")
    _require_factorized(net)
    adj = folded_graph(net).adjacency()
    scopes = {o.variables for o in net.outcomes}

    def blocked(path):
        for i in range(1, len(path) - 1):
            z = path[i]
            if z in given:
                trio = {path[i - 1], z, path[i + 1]}
                if not any(trio <= s for s in scopes):
                    return True
        return False

    path = [a]
    on_path = {a}

    def open_path_exists(x):
        for y in sorted(adj[x]):
            if y in on_path:
                continue
            path.append(y)
            if y == b:
                found = not blocked(path)
            else:
                on_path.add(y)
                found = open_path_exists(y)
                on_path.discard(y)
            path.pop()
            if found:
                return True
        return False

    return not open_path_exists(a)
