"""Embedding Markov factor tables and Bayesian CPTs as factorized networks.

Also holds an independent brute-force joint (enumerate every full
assignment, multiply matching cells, normalize) that shares nothing with
the factor-product join, plus the students and friends fixtures.

Value ``i`` of variable ``X`` is always named ``"X(i)"``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import prod

from .core import Edge, Outcome, ValueId, Variable
from .errors import CapExceeded, ColumnNotNormalized, NegativeValue
from .network import NetworkBuilder, RelationNetwork, as_weight

BRUTE_FORCE_CAP = 10**6


def value_name(variable: str, index: int) -> str:
    return f"{variable}({index})"


def _frac(x) -> Fraction:
    if isinstance(x, float):
        x = repr(x)
    return Fraction(x)


@dataclass(frozen=True)
class FactorTable:
    """Nonnegative table over ``scope``; ``values`` is row-major (last variable fastest)."""

    scope: tuple[tuple[str, int], ...]
    values: tuple[Fraction, ...]

    def __init__(self, scope: Sequence[tuple[str, int]], values: Sequence):
        scope = tuple((str(v), int(c)) for v, c in scope)
        values = tuple(_frac(x) for x in values)
        if not scope:
            raise ValueError("factor scope must be nonempty")
        if len({v for v, _ in scope}) != len(scope):
            raise ValueError(f"repeated variable in scope {scope}")
        if len(values) != prod(c for _, c in scope):
            raise ValueError(f"{len(values)} values for a scope of size {prod(c for _, c in scope)}")
        neg = [x for x in values if x < 0]
        if neg:
            raise NegativeValue(f"negative factor value {neg[0]}")
        object.__setattr__(self, "scope", scope)
        object.__setattr__(self, "values", values)

    def cells(self):
        """Yield ``(index tuple, value)`` in row-major order."""
        return zip(product(*(range(c) for _, c in self.scope)), self.values)


@dataclass(frozen=True)
class CptTable:
    """P(child | parents).  ``values[i][j]``: child value ``i`` under parent column ``j``.

    Parent columns enumerate parent assignments with the first parent
    varying slowest.
    """

    child: tuple[str, int]
    parents: tuple[tuple[str, int], ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __init__(self, child: tuple[str, int], parents: Sequence[tuple[str, int]], values):
        child = (str(child[0]), int(child[1]))
        parents = tuple((str(v), int(c)) for v, c in parents)
        rows = tuple(tuple(_frac(x) for x in row) for row in values)
        ncols = prod(c for _, c in parents)
        if len(rows) != child[1] or any(len(r) != ncols for r in rows):
            raise ValueError(f"CPT for {child[0]} must be {child[1]} x {ncols}")
        for j in range(ncols):
            col = [r[j] for r in rows]
            if any(x < 0 for x in col):
                raise NegativeValue(f"negative probability in CPT for {child[0]}")
            if sum(col) != 1:
                raise ColumnNotNormalized(
                    f"CPT for {child[0]}: column {j} sums to {sum(col)}, not 1")
        object.__setattr__(self, "child", child)
        object.__setattr__(self, "parents", parents)
        object.__setattr__(self, "values", rows)

    @property
    def family_tag(self) -> str:
        return f"{self.child[0]}←{','.join(p for p, _ in self.parents)}"

    def as_factor_table(self) -> FactorTable:
        flat = [x for row in self.values for x in row]
        return FactorTable((self.child, *self.parents), flat)


def import_markov_factor(table: FactorTable, tag: str) -> list[tuple[Outcome, Fraction]]:
    """One outcome per nonzero cell; the cell's values are joined as a clique under ``tag``."""
    out = []
    names = [v for v, _ in table.scope]
    for idx, w in table.cells():
        if w == 0:
            continue
        nodes = [ValueId(v, value_name(v, i)) for v, i in zip(names, idx)]
        edges = [Edge(x, y, tag) for x, y in combinations(nodes, 2)]
        out.append((Outcome(nodes, edges), w))
    return out


def import_bayes_cpt(table: CptTable, eta=1) -> list[tuple[Outcome, Fraction]]:
    """One star outcome per (child value, parent assignment), weight P * eta.

    Every edge of the star links the child value to one parent value and
    carries the family tag ``"child←p1,...,pn"``.  Zero-probability cells
    emit nothing.
    """
    eta = as_weight(eta)
    if eta <= 0:
        raise ValueError("eta must be positive")
    child, card = table.child
    tag = table.family_tag
    columns = list(product(*(range(c) for _, c in table.parents)))
    out = []
    for i in range(card):
        cv = ValueId(child, value_name(child, i))
        for j, assignment in enumerate(columns):
            p = table.values[i][j]
            if p == 0:
                continue
            pvs = [ValueId(v, value_name(v, k)) for (v, _), k in zip(table.parents, assignment)]
            edges = [Edge(cv, pv, tag) for pv in pvs]
            out.append((Outcome([cv, *pvs], edges), p * eta))
    return out


def _declared_variables(scopes) -> list[Variable]:
    cards: dict[str, int] = {}
    for v, c in scopes:
        if cards.setdefault(v, c) != c:
            raise ValueError(f"variable {v!r} used with cardinalities {cards[v]} and {c}")
    return [Variable(v, [value_name(v, i) for i in range(c)]) for v, c in sorted(cards.items())]


def markov_network(tables: Sequence[FactorTable], tag: str = "r") -> RelationNetwork:
    variables = _declared_variables(s for t in tables for s in t.scope)
    builder = NetworkBuilder(variables, {tag})
    for t in tables:
        builder.add_outcomes(import_markov_factor(t, tag))
    return builder.build()


def bayes_network(cpts: Sequence[CptTable], eta=1) -> RelationNetwork:
    variables = _declared_variables(s for t in cpts for s in (t.child, *t.parents))
    builder = NetworkBuilder(variables, {t.family_tag for t in cpts if t.parents})
    for t in cpts:
        builder.add_outcomes(import_bayes_cpt(t, eta))
    return builder.build()


def brute_force_joint(tables: Sequence[FactorTable], cap: int = BRUTE_FORCE_CAP
                      ) -> dict[frozenset[ValueId], Fraction]:
    """Normalized product of tables over every full assignment; zero rows omitted."""
    cards: dict[str, int] = {}
    for t in tables:
        for v, c in t.scope:
            cards.setdefault(v, c)
    names = sorted(cards)
    size = prod(cards[v] for v in names)
    if size > cap:
        raise CapExceeded(f"{size} assignments exceed the cap of {cap}")
    pos = {v: i for i, v in enumerate(names)}
    lookups = []
    for t in tables:
        cell = dict(t.cells())
        lookups.append(([pos[v] for v, _ in t.scope], cell))
    raw = {}
    for assignment in product(*(range(cards[v]) for v in names)):
        w = Fraction(1)
        for idx, cell in lookups:
            w *= cell[tuple(assignment[i] for i in idx)]
            if not w:
                break
        if w:
            raw[frozenset(ValueId(v, value_name(v, assignment[pos[v]])) for v in names)] = w
    z = sum(raw.values(), Fraction(0))
    if z == 0:
        return {}
    return {k: w / z for k, w in raw.items()}


# Students network: D difficulty, I intelligence, G grade, S SAT, L letter.
STUDENTS_CPTS = (
    CptTable(("D", 2), [], [["0.6"], ["0.4"]]),
    CptTable(("I", 2), [], [["0.7"], ["0.3"]]),
    CptTable(("G", 3), [("I", 2), ("D", 2)], [
        ["0.3", "0.05", "0.9", "0.5"],
        ["0.4", "0.25", "0.08", "0.3"],
        ["0.3", "0.7", "0.02", "0.2"]]),
    CptTable(("S", 2), [("I", 2)], [["0.95", "0.2"], ["0.05", "0.8"]]),
    CptTable(("L", 2), [("G", 3)], [["0.1", "0.4", "0.99"], ["0.9", "0.6", "0.01"]]),
)

FRIENDS_TABLES = (
    FactorTable([("A", 2), ("B", 2)], [30, 5, 1, 10]),
    FactorTable([("B", 2), ("C", 2)], [100, 1, 1, 100]),
    FactorTable([("C", 2), ("D", 2)], [1, 100, 100, 1]),
    FactorTable([("D", 2), ("A", 2)], [100, 1, 1, 100]),
)


def fixture_students(eta=1) -> RelationNetwork:
    return bayes_network(STUDENTS_CPTS, eta)


def fixture_friends() -> RelationNetwork:
    return markov_network(FRIENDS_TABLES, "r")
