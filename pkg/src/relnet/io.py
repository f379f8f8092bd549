"""Stream and network file formats, DOT export.

Stream: newline-delimited JSON, one record per line::

    {"nodes": [{"var": "V1", "val": "h1"}, {"var": "V2", "val": "h2"}],
     "edges": [{"a": 0, "b": 1, "rel": "r1"}], "count": 2}

Network document: a single JSON object with ``variables``, ``relations``
and ``outcomes``; weights are exact strings such as ``"6"`` or ``"6/7"``.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator
from decimal import Decimal, localcontext
from fractions import Fraction

from .core import Outcome, Variable, canonical_key, make_outcome
from .errors import InvariantViolation, OutcomeError, ParseError, ZeroWeight
from .inference import JointNetwork
from .network import RelationNetwork, folded_graph


def record_to_outcome(record: dict) -> tuple[Outcome, int]:
    if not isinstance(record, dict):
        raise ParseError("record must be a JSON object")
    try:
        nodes = [(str(n["var"]), str(n["val"])) for n in record.get("nodes", [])]
        edges = [(int(e["a"]), int(e["b"]), str(e["rel"])) for e in record.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed record: {exc!r}") from exc
    count = record.get("count", 1)
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise ParseError(f"count must be a positive integer, got {count!r}")
    return make_outcome(nodes, edges), count


def outcome_to_record(outcome: Outcome) -> dict:
    nodes = sorted(outcome.nodes)
    pos = {n: i for i, n in enumerate(nodes)}
    return {
        "nodes": [{"var": n.variable, "val": n.value} for n in nodes],
        "edges": [{"a": pos[e.a], "b": pos[e.b], "rel": e.tag} for e in sorted(outcome.edges)],
    }


def parse_outcome_stream(lines: str | Iterable[str]) -> Iterator[Outcome]:
    """Yield outcomes from NDJSON text, repeating each ``count`` times.

    Blank lines are skipped.  Errors carry the 1-based line number.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", lineno) from exc
        try:
            outcome, count = record_to_outcome(record)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from exc
        except OutcomeError as exc:
            raise ParseError(f"{type(exc).__name__}: {exc}", lineno) from exc
        for _ in range(count):
            yield outcome


def format_weight(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def serialize_network(net: RelationNetwork) -> str:
    variables = {}
    for name, var in net.variables.items():
        entry = {"values": list(var.domain)}
        if var.unobserved != "u":
            entry["unobserved"] = var.unobserved
        variables[name] = entry
    doc = {
        "variables": variables,
        "relations": sorted(net.tags),
        "outcomes": [dict(outcome_to_record(o), weight=format_weight(w)) for o, w in net.items()],
    }
    if isinstance(net, JointNetwork):
        doc["constructed"] = True
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def parse_network(text: str) -> RelationNetwork:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(doc, dict):
        raise ParseError("network document must be a JSON object")
    try:
        variables = {
            name: Variable(name, [str(v) for v in spec["values"]], spec.get("unobserved", "u"))
            for name, spec in doc.get("variables", {}).items()
        }
        tags = [str(t) for t in doc.get("relations", [])]
        outcomes: dict[Outcome, Fraction] = {}
        for i, rec in enumerate(doc.get("outcomes", [])):
            outcome, _ = record_to_outcome({k: v for k, v in rec.items() if k != "count"})
            raw = rec.get("weight", "1")
            try:
                weight = Fraction(str(raw))
            except ValueError as exc:
                raise ParseError(f"outcome {i}: bad weight {raw!r}") from exc
            if weight <= 0:
                raise InvariantViolation(f"outcome {i}: weight must be positive, got {raw!r}")
            if outcome in outcomes:
                raise InvariantViolation(f"outcome {i}: duplicate of an earlier outcome")
            outcomes[outcome] = weight
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed network document: {exc!r}") from exc
    except (OutcomeError, ZeroWeight) as exc:
        raise InvariantViolation(str(exc)) from exc
    cls = JointNetwork if doc.get("constructed") else RelationNetwork
    try:
        net = RelationNetwork(variables, tags, outcomes)
    except (OutcomeError, ZeroWeight) as exc:
        raise InvariantViolation(str(exc)) from exc
    return cls._raw(net._variables, net._tags, net._outcomes)


def format_probability(p: Fraction, exact: bool = False, digits: int = 17) -> str:
    """Fraction string, or the exact rational rounded to ``digits`` significant digits."""
    if exact:
        return format_weight(p)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(p.numerator) / Decimal(p.denominator)
    text = format(d.normalize(), "f")
    return "0" if text in ("-0", "0E0") else text


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(net: RelationNetwork, mode: str = "outcomes") -> str:
    if mode == "outcomes":
        lines = ["digraph outcomes {"]
        for i, (o, w) in enumerate(net.items()):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append(f"    label={_q('c = ' + format_weight(w))};")
            if o.is_empty:
                lines.append(f"    {_q(f'o{i}:K0')} [label=\"K0\", shape=plaintext];")
            for n in sorted(o.nodes):
                lines.append(f"    {_q(f'o{i}:{n}')} [label={_q(str(n))}];")
            for e in sorted(o.edges):
                lines.append(f"    {_q(f'o{i}:{e.a}')} -> {_q(f'o{i}:{e.b}')} "
                             f"[label={_q(e.tag)}, dir=none];")
            lines.append("  }")
        lines.append("}")
    elif mode == "folded":
        fg = folded_graph(net)
        lines = ["digraph folded {"]
        for v in fg.variables:
            lines.append(f"  {_q(v)};")
        for (a, b), tags in fg.edges.items():
            label = ", ".join(f"{t} x{c}" for t, c in sorted(tags.items()))
            lines.append(f"  {_q(a)} -> {_q(b)} [label={_q(label)}, dir=none];")
        lines.append("}")
    else:
        raise ValueError(f"unknown DOT mode {mode!r}")
    return "\n".join(lines) + "\n"


def network_keys(net: RelationNetwork) -> dict[bytes, Fraction]:
    return {canonical_key(o): w for o, w in net.outcomes.items()}
