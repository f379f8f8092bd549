"""Probabilistic relation networks with exact rational arithmetic.

Outcomes are small connected graphs of values joined by typed relations.
A network is a weighted multiset of outcomes; from it you can read value
and variable distributions, condition on evidence, build a full joint for
factorized networks, and test conditional independence.
"""

from ._kernels import BACKEND
from .combinatorics import (
    CountParams,
    count_connected,
    count_max_outcomes,
    count_sample_space,
    enumerate_outcomes,
)
from .core import K0, UNOBSERVED, Edge, Outcome, ValueId, Variable, canonical_key, is_subgraph, make_outcome, variables_of
from .inference import (
    Factor,
    JointNetwork,
    condition,
    conditionally_independent,
    infer,
    is_factorized,
    join_full,
    joint_marginals,
    split_factors,
)
from .interop import (
    CptTable,
    FactorTable,
    brute_force_joint,
    fixture_friends,
    fixture_students,
    import_bayes_cpt,
    import_markov_factor,
)
from .network import (
    Distribution,
    NetworkBuilder,
    RelationNetwork,
    folded_graph,
    learn_stream,
    normalized_distribution,
    outcome_distribution,
    relation_conditional,
    value_probability,
    variable_distribution,
)

__version__ = "0.1.0"
