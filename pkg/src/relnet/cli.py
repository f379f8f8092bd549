"""Command-line interface: ``relnet <command> ...``.

Exit codes: 0 ok, 1 usage, 2 parse/validation error, 3 inference error.
Errors are reported on stderr as ``error: <category>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import interop
from .combinatorics import (
    CountParams,
    count_max_outcomes,
    count_sample_space,
    enumerate_outcomes,
    uniform_variables,
)
from .errors import (
    AllUnobserved,
    ContradictoryEvidence,
    EmptyJoint,
    EnumerationCapExceeded,
    NonIntegralRecursion,
    NotFactorized,
    RelnetError,
    ZeroConditionMass,
)
from .inference import (
    condition,
    conditionally_independent,
    evidence_outcome,
    infer,
    join_full,
)
from .io import (
    export_dot,
    format_probability,
    parse_network,
    parse_outcome_stream,
    record_to_outcome,
    serialize_network,
)
from .network import learn_stream, normalized_distribution, variable_distribution

EXIT_USAGE, EXIT_INPUT, EXIT_INFERENCE = 1, 2, 3

_INFERENCE_ERRORS = (NotFactorized, ContradictoryEvidence, EmptyJoint, AllUnobserved,
                     ZeroConditionMass, EnumerationCapExceeded, NonIntegralRecursion)

BUILTIN_NETS = {"@students": interop.fixture_students, "@friends": interop.fixture_friends}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: usage: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_net(spec: str):
    if spec in BUILTIN_NETS:
        return BUILTIN_NETS[spec]()
    return parse_network(_read_text(spec))


def _assignments(items) -> list[tuple[str, str]]:
    out = []
    for item in items or ():
        var, sep, val = item.partition("=")
        if not sep or not var or not val:
            raise _UsageError(f"assignment {item!r} is not of the form V=value")
        out.append((var, val))
    return out


def _csv(text: str | None) -> list[str]:
    if not text:
        return []
    return [t.strip() for t in text.split(",") if t.strip()]


def _print_distribution(dist, exact: bool) -> None:
    cells = " ".join(f"{k}={format_probability(p, exact)}" for k, p in dist.items())
    print(f"{dist.variable}: {cells}")


def cmd_learn(args) -> int:
    net = learn_stream(parse_outcome_stream(_read_text(args.stream).splitlines()))
    _write_text(args.out, serialize_network(net))
    return 0


def cmd_marginal(args) -> int:
    net = _load_net(args.net)
    names = [args.var] if args.var else list(net.variables)
    for name in names:
        dist = normalized_distribution(net, name) if args.normalized else variable_distribution(net, name)
        _print_distribution(dist, args.exact)
    return 0


def cmd_condition(args) -> int:
    net = _load_net(args.net)
    if args.evidence:
        outcome, _ = record_to_outcome(json.loads(_read_text(args.evidence)))
        net = condition(net, outcome)
    for var, val in _assignments(args.assign):
        net = condition(net, evidence_outcome(net, var, val))
    if net.is_empty:
        print("warning: conditioning removed every outcome", file=sys.stderr)
    _write_text(args.out, serialize_network(net))
    return 0


def cmd_join(args) -> int:
    net = _load_net(args.net)
    order = _csv(args.order) or None
    _write_text(args.out, serialize_network(join_full(net, order)))
    return 0


def cmd_infer(args) -> int:
    net = _load_net(args.net)
    query = _csv(args.query) or None
    result = infer(net, _assignments(args.assign), query)
    for dist in result.values():
        _print_distribution(dist, args.exact)
    return 0


def cmd_count(args) -> int:
    params = CountParams(args.variables, args.values, args.relations)
    print(count_max_outcomes(params))
    if args.sample_space:
        print(f"sample-space {count_sample_space(args.variables * (args.values - 1), args.relations)}")
    if args.oracle:
        tags = [f"r{i}" for i in range(1, args.relations + 1)]
        n = len(enumerate_outcomes(uniform_variables(args.variables, args.values), tags))
        print(f"oracle {n}")
    return 0


def _model_values(x):
    return Fraction(x) if isinstance(x, str) else x


def cmd_import(args) -> int:
    doc = json.loads(_read_text(args.model), parse_float=Fraction)
    if args.format == "markov":
        tables = [interop.FactorTable([tuple(s) for s in f["scope"]],
                                      [_model_values(x) for x in f["values"]])
                  for f in doc["factors"]]
        net = interop.markov_network(tables, doc.get("relation", "r"))
    else:
        cpts = [interop.CptTable((c["child"], c["card"]), [tuple(p) for p in c.get("parents", [])],
                                 [[_model_values(x) for x in row] for row in c["values"]])
                for c in doc["cpts"]]
        net = interop.bayes_network(cpts, _model_values(doc.get("eta", 1)))
    _write_text(args.out, serialize_network(net))
    return 0


def cmd_indep(args) -> int:
    net = _load_net(args.net)
    ok = conditionally_independent(net, args.a, args.b, _csv(args.given))
    print("independent" if ok else "dependent")
    return 0


def cmd_export_dot(args) -> int:
    _write_text(args.out, export_dot(_load_net(args.net), args.mode))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="relnet", description="Probabilistic relation networks with exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    net_help = "network document, '-' for stdin, or a built-in: @students, @friends"

    s = sub.add_parser("learn", help="count outcomes from an NDJSON stream")
    s.add_argument("--stream", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_learn)

    s = sub.add_parser("marginal", help="per-variable distributions")
    s.add_argument("--net", required=True, help=net_help)
    s.add_argument("--var")
    s.add_argument("--normalized", action="store_true", help="drop the unobserved value")
    s.add_argument("--exact", action="store_true", help="print fractions")
    s.set_defaults(func=cmd_marginal)

    s = sub.add_parser("condition", help="reduce a network by evidence")
    s.add_argument("--net", required=True, help=net_help)
    s.add_argument("--assign", action="append", metavar="V=value")
    s.add_argument("--evidence", help="file holding one outcome record")
    s.add_argument("--out")
    s.set_defaults(func=cmd_condition)

    s = sub.add_parser("join", help="full joint of a factorized network")
    s.add_argument("--net", required=True, help=net_help)
    s.add_argument("--order", help="comma-separated variable order")
    s.add_argument("--out")
    s.set_defaults(func=cmd_join)

    s = sub.add_parser("infer", help="condition, join and read marginals")
    s.add_argument("--net", required=True, help=net_help)
    s.add_argument("--assign", action="append", metavar="V=value")
    s.add_argument("--query", help="comma-separated variables (default: all)")
    s.add_argument("--exact", action="store_true")
    s.set_defaults(func=cmd_infer)

    s = sub.add_parser("count", help="outcome counts")
    s.add_argument("--variables", type=int, required=True)
    s.add_argument("--values", type=int, required=True, help="values per variable, unobserved included")
    s.add_argument("--relations", type=int, required=True)
    s.add_argument("--sample-space", action="store_true",
                   help="also print the sample-space count over variables*(values-1) events")
    s.add_argument("--oracle", action="store_true", help="also count by brute-force enumeration")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("import", help="embed a Bayesian or Markov model")
    s.add_argument("--format", choices=["bayes", "markov"], required=True)
    s.add_argument("--model", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_import)

    s = sub.add_parser("indep", help="conditional independence query")
    s.add_argument("--net", required=True, help=net_help)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--given", default="")
    s.set_defaults(func=cmd_indep)

    s = sub.add_parser("export-dot", help="Graphviz DOT text")
    s.add_argument("--net", required=True, help=net_help)
    s.add_argument("--mode", choices=["outcomes", "folded"], default="outcomes")
    s.add_argument("--out")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _INFERENCE_ERRORS as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return EXIT_INFERENCE
    except RelnetError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"error: parse-error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_INPUT


def cli_main(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
