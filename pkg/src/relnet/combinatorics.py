"""Outcome counting formulas and a brute-force enumerator that checks them.

All arithmetic is on Python ints.  ``n_events``/``n_values`` arguments
follow the counting convention of the formulas: ``n_values`` is the number
of values per variable INCLUDING the unobserved one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb
from operator import itemgetter

from ._kernels import connected_labelings, pair_index
from .core import Edge, Outcome, Variable
from .errors import EnumerationCapExceeded, NonIntegralRecursion

DEFAULT_ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class CountParams:
    n_variables: int
    n_values: int
    n_relations: int

    def __post_init__(self):
        if self.n_variables < 1:
            raise ValueError("n_variables must be >= 1")
        if self.n_values < 2:
            raise ValueError("n_values counts the unobserved value and must be >= 2")
        if self.n_relations < 0:
            raise ValueError("n_relations must be >= 0")


def count_sample_space(n_events: int, n_relations: int) -> int:
    """``(|R|+1)^(|E|(|E|-1)/2) + |E|``, taken verbatim.

    Note this counts every edge labeling over the full event set, including
    disconnected ones; :func:`count_max_outcomes` is the connected count.
    """
    if n_events < 1 or n_relations < 0:
        raise ValueError("need n_events >= 1 and n_relations >= 0")
    return (n_relations + 1) ** (n_events * (n_events - 1) // 2) + n_events


@lru_cache(maxsize=None)
def count_connected(k: int, n_relations: int) -> int:
    """Number of connected edge-labelings of ``k`` labeled vertices.

    Each vertex pair carries no edge or one of ``n_relations`` tags.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    base = n_relations + 1
    total = base ** (k * (k - 1) // 2)
    acc = 0
    for i in range(1, k):
        acc += i * comb(k, i) * base ** ((k - i) * (k - i - 1) // 2) * count_connected(i, n_relations)
    q, r = divmod(acc, k)
    if r:
        raise NonIntegralRecursion(f"sum {acc} not divisible by k={k}")
    return total - q


def count_max_outcomes(params: CountParams) -> int:
    """Maximum number of distinct nonempty outcomes (K0 excluded)."""
    nv, ne, nr = params.n_variables, params.n_values, params.n_relations
    return sum(comb(nv, k) * count_connected(k, nr) * (ne - 1) ** k for k in range(1, nv + 1))


def enumeration_size(variables: list[Variable], n_relations: int) -> int:
    """Candidate count the enumerator would visit (before connectivity pruning)."""
    total = 0
    nv = len(variables)
    for k in range(1, nv + 1):
        labelings = (n_relations + 1) ** (k * (k - 1) // 2)
        for subset in combinations(variables, k):
            sel = 1
            for v in subset:
                sel *= len(v.domain)
            total += labelings * sel
    return total


def enumerate_outcomes(
    variables: list[Variable],
    tags,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> set[Outcome]:
    """Every connected outcome over one-value-per-variable selections.

    Pairs carry at most one tag, matching the counting formula.  K0 is not
    included.
    """
    tags = sorted(tags)
    size = enumeration_size(list(variables), len(tags))
    if size > cap:
        raise EnumerationCapExceeded(f"enumeration would visit {size} candidates (cap {cap})")
    out: set[Outcome] = set()
    trusted = Outcome._trusted
    width = len(tags) + 1
    for k in range(1, len(variables) + 1):
        pairs = pair_index(k)
        # one getter per labeling picks its edges out of a flat (pair, tag) table;
        # indices are doubled so a single-edge getter still returns a tuple
        getters = [itemgetter(*[p * width + lab for p, lab in enumerate(labels) if lab] * 2)
                   for labels in connected_labelings(k, len(tags))] if pairs else None
        for subset in combinations(variables, k):
            for chosen in product(*(v.values() for v in subset)):
                nodes = frozenset(chosen)
                names = frozenset([v.variable for v in chosen])
                if getters is None:
                    out.add(trusted(nodes, frozenset(), names))
                    continue
                flat = [None if not t else Edge(chosen[i], chosen[j], tags[t - 1])
                        for i, j in pairs for t in range(width)]
                for get in getters:
                    out.add(trusted(nodes, frozenset(get(flat)), names))
    return out


def uniform_variables(n_variables: int, n_values: int) -> list[Variable]:
    """Variables ``V1..Vn`` each with ``n_values - 1`` observable values."""
    return [Variable(f"V{i}", [f"e{j}" for j in range(1, n_values)])
            for i in range(1, n_variables + 1)]

