import random
from itertools import combinations

import pytest

from relnet.core import K0, Edge, Outcome, ValueId, Variable, make_outcome
from relnet.interop import FactorTable
from relnet.network import NetworkBuilder, learn_stream


def single(var, val):
    return make_outcome([(var, val)])


def pair(v1, x1, v2, x2, tag):
    return make_outcome([(v1, x1), (v2, x2)], [(0, 1, tag)])


def two_coin_stream():
    return [
        K0,
        single("V1", "h1"),
        single("V1", "h1"),
        single("V2", "t2"),
        single("V1", "t1"),
        pair("V1", "h1", "V2", "h2", "r1"),
        pair("V1", "h1", "V2", "h2", "r1"),
        pair("V1", "h1", "V2", "h2", "r2"),
        pair("V1", "t1", "V2", "t2", "r1"),
        pair("V1", "h1", "V2", "t2", "r1"),
    ]


def three_coin_stream():
    return [
        single("V2", "h2"),
        single("V1", "h1"),
        single("V2", "h2"),
        single("V3", "t3"),
        single("V1", "h1"),
        single("V2", "h2"),
        pair("V2", "h2", "V3", "h3", "r1"),
        pair("V1", "h1", "V2", "h2", "r1"),
        pair("V2", "t2", "V3", "t3", "r2"),
        pair("V1", "t1", "V2", "t2", "r1"),
    ]


def coin_variables(n):
    return [Variable(f"V{i}", [f"h{i}", f"t{i}"]) for i in range(1, n + 1)]


@pytest.fixture
def two_coin():
    return learn_stream(two_coin_stream(), coin_variables(2), {"r1", "r2"})


@pytest.fixture
def three_coin():
    return learn_stream(three_coin_stream(), coin_variables(3), {"r1", "r2"})


@pytest.fixture
def uniform_joint():
    """Eight two-node outcomes (both tags, all value pairs), weight 1 each."""
    b = NetworkBuilder(coin_variables(2), {"r1", "r2"})
    for tag in ("r1", "r2"):
        for x in ("h1", "t1"):
            for y in ("h2", "t2"):
                b.add_outcome(pair("V1", x, "V2", y, tag))
    return b.build()


def random_outcome(rng, variables, tags):
    """Random connected outcome: random spanning tree plus a few extra edges."""
    k = rng.randint(1, len(variables))
    chosen = rng.sample(variables, k)
    nodes = [ValueId(v.name, rng.choice(v.domain)) for v in chosen]
    edges = set()
    if tags:
        for i in range(1, k):
            edges.add(Edge(nodes[i], nodes[rng.randrange(i)], rng.choice(tags)))
        for x, y in combinations(nodes, 2):
            if rng.random() < 0.2:
                edges.add(Edge(x, y, rng.choice(tags)))
    elif k > 1:
        nodes = nodes[:1]
    return Outcome(nodes, edges)


def random_network(rng, max_vars=5, max_values=4, max_tags=3, max_outcomes=50):
    nv = rng.randint(1, max_vars)
    variables = [Variable(f"X{i}", [f"x{i}_{j}" for j in range(rng.randint(1, max_values - 1))])
                 for i in range(nv)]
    tags = [f"r{i}" for i in range(rng.randint(0, max_tags))]
    b = NetworkBuilder(variables, tags)
    for _ in range(rng.randint(0, max_outcomes)):
        if rng.random() < 0.05:
            o = K0
        else:
            o = random_outcome(rng, variables, tags)
        b.add_outcome(o, rng.choice([1, 1, 2, 3, "1/2", "7/3"]))
    return b.build()


def random_factor_tables(rng, max_vars=5):
    """Connected set of positive-ish tables: a random tree of pair/triple factors plus unaries.

    No table slice for a single value is all zero.
    """
    nv = rng.randint(2, max_vars)
    names = [f"X{i}" for i in range(nv)]
    cards = {v: rng.randint(2, 3) for v in names}
    scopes = []
    for i in range(1, nv):
        scopes.append([names[i], names[rng.randrange(i)]])
    if nv >= 3 and rng.random() < 0.5:
        scopes.append(rng.sample(names, 3))
    for v in names:
        if rng.random() < 0.3:
            scopes.append([v])
    tables = []
    for scope in scopes:
        size = 1
        for v in scope:
            size *= cards[v]
        while True:
            values = [0 if rng.random() < 0.1 else rng.randint(1, 9) for _ in range(size)]
            t = FactorTable([(v, cards[v]) for v in scope], values)
            if _no_zero_slice(t):
                break
        tables.append(t)
    return tables


def _no_zero_slice(table):
    mass = {}
    for idx, w in table.cells():
        for pos, i in enumerate(idx):
            mass[(pos, i)] = mass.get((pos, i), 0) + w
    return all(m > 0 for m in mass.values())


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    def report(criterion, description, ok):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {description}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
