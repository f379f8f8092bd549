import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from relnet.core import K0, ValueId, Variable
from relnet.errors import AllUnobserved, UnknownName, UnknownValue, UnknownVariable, ZeroConditionMass, ZeroWeight
from relnet.network import (
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
from relnet.inference import join_full

from conftest import coin_variables, pair, random_network, single, three_coin_stream, two_coin_stream

V = ValueId


class TestBuilder:
    def test_k0_increments(self):
        b = NetworkBuilder()
        b.add_outcome(K0, 1).add_outcome(K0, 1)
        assert b.build().weight(K0) == 2

    def test_zero_weight(self):
        with pytest.raises(ZeroWeight):
            NetworkBuilder().add_outcome(single("V1", "h1"), 0)

    def test_negative_weight(self):
        with pytest.raises(ZeroWeight):
            NetworkBuilder().add_outcome(single("V1", "h1"), -1)

    def test_declared_universe_enforced(self):
        b = NetworkBuilder(coin_variables(2), {"r1"})
        with pytest.raises(UnknownName):
            b.add_outcome(single("V3", "h3"))
        with pytest.raises(UnknownName):
            b.add_outcome(pair("V1", "h1", "V2", "h2", "r2"))

    def test_discovery(self):
        net = learn_stream(three_coin_stream())
        assert list(net.variables) == ["V1", "V2", "V3"]
        assert net.variables["V1"].domain == ("h1", "t1")
        assert net.tags == {"r1", "r2"}

    def test_fractional_weights(self):
        b = NetworkBuilder()
        b.add_outcome(single("V1", "h1"), "1/3").add_outcome(single("V1", "h1"), 0.5)
        assert b.build().weight(single("V1", "h1")) == F(5, 6)

    def test_network_rejects_zero_weight_directly(self):
        with pytest.raises(ZeroWeight):
            RelationNetwork({"V1": Variable("V1", ["h1"])}, [], {single("V1", "h1"): 0})


class TestLearnStream:
    def test_table1_counts(self, three_coin):
        expected = {
            single("V1", "h1"): 2,
            single("V2", "h2"): 3,
            single("V3", "t3"): 1,
            pair("V2", "h2", "V3", "h3", "r1"): 1,
            pair("V1", "h1", "V2", "h2", "r1"): 1,
            pair("V2", "t2", "V3", "t3", "r2"): 1,
            pair("V1", "t1", "V2", "t2", "r1"): 1,
        }
        assert dict(three_coin.outcomes) == expected
        assert three_coin.total == 10

    def test_empty_stream(self):
        net = learn_stream([])
        assert net.is_empty
        assert net.total == 0

    def test_single_record(self):
        o = pair("V1", "h1", "V2", "h2", "r1")
        assert outcome_distribution(learn_stream([o])) == {o: 1}

    def test_order_insensitive(self):
        rng = random.Random(0)
        stream = three_coin_stream()
        base = learn_stream(stream)
        for _ in range(10):
            s = stream[:]
            rng.shuffle(s)
            assert learn_stream(s) == base

    def test_error_carries_record_index(self):
        with pytest.raises(UnknownName, match="record 1"):
            learn_stream([single("V1", "h1"), single("V9", "x")], coin_variables(2), set())


class TestOutcomeDistribution:
    def test_three_coin(self, three_coin):
        probs = sorted(outcome_distribution(three_coin).values(), reverse=True)
        assert probs == [F(3, 10), F(2, 10)] + [F(1, 10)] * 5

    def test_empty(self):
        assert outcome_distribution(learn_stream([])) == {}

    def test_single_weighted(self):
        b = NetworkBuilder().add_outcome(single("V1", "h1"), 7)
        assert list(outcome_distribution(b.build()).values()) == [1]


class TestValueProbability:
    @pytest.mark.parametrize("value,expected", [
        (("V1", "h1"), F(6, 10)), (("V1", "t1"), F(2, 10)),
        (("V2", "h2"), F(3, 10)), (("V2", "t2"), F(3, 10))])
    def test_two_coin(self, two_coin, value, expected):
        assert value_probability(two_coin, value) == expected

    def test_unobserved_value_is_zero(self):
        net = NetworkBuilder([Variable("V1", ["h1", "t1"])]).add_outcome(single("V1", "h1")).build()
        assert value_probability(net, ("V1", "t1")) == 0

    def test_unknown(self, two_coin):
        with pytest.raises(UnknownValue):
            value_probability(two_coin, ("V1", "zz"))
        with pytest.raises(UnknownVariable):
            value_probability(two_coin, ("V9", "h1"))
        with pytest.raises(UnknownValue):
            value_probability(two_coin, ("V1", "u"))


class TestVariableDistribution:
    def test_two_coin(self, two_coin):
        assert variable_distribution(two_coin, "V1").entries == {"h1": F(6, 10), "t1": F(2, 10), "u": F(2, 10)}
        assert variable_distribution(two_coin, "V2").entries == {"h2": F(3, 10), "t2": F(3, 10), "u": F(4, 10)}

    def test_empty_network(self):
        net = NetworkBuilder(coin_variables(1)).build()
        assert variable_distribution(net, "V1").entries == {"h1": 0, "t1": 0, "u": 1}

    def test_unknown(self, two_coin):
        with pytest.raises(UnknownVariable):
            variable_distribution(two_coin, "V7")

    def test_unobserved_mass_by_direct_summation(self):
        rng = random.Random(11)
        for _ in range(50):
            net = random_network(rng)
            if net.is_empty:
                continue
            for name in net.variables:
                direct = sum((w for o, w in net.outcomes.items() if name not in o.variables), F(0))
                assert variable_distribution(net, name)["u"] == direct / net.total

    @given(st.integers(0, 10**6), st.fractions(min_value=F(1, 100), max_value=100))
    @settings(max_examples=40, deadline=None)
    def test_weight_scaling_invariance(self, seed, scale):
        net = random_network(random.Random(seed))
        scaled = net.with_outcomes({o: w * scale for o, w in net.outcomes.items()})
        for name in net.variables:
            assert variable_distribution(net, name) == variable_distribution(scaled, name)


class TestNormalized:
    def test_two_coin(self, two_coin):
        assert normalized_distribution(two_coin, "V1").entries == {"h1": F(3, 4), "t1": F(1, 4)}
        assert normalized_distribution(two_coin, "V2").entries == {"h2": F(1, 2), "t2": F(1, 2)}

    def test_all_unobserved(self):
        net = NetworkBuilder(coin_variables(2)).add_outcome(single("V1", "h1")).build()
        with pytest.raises(AllUnobserved):
            normalized_distribution(net, "V2")


class TestRelationConditional:
    def test_two_coin(self, two_coin):
        assert relation_conditional(two_coin, ("V1", "h1"), "r1", ("V2", "h2")) == F(2, 3)

    def test_reverse_direction(self, two_coin):
        assert relation_conditional(two_coin, ("V2", "h2"), "r1", ("V1", "h1")) == F(1, 3)

    def test_never_cooccurring(self, two_coin):
        assert relation_conditional(two_coin, ("V1", "t1"), "r2", ("V2", "h2")) == 0

    def test_zero_mass(self):
        net = NetworkBuilder(coin_variables(2), {"r1"}).add_outcome(single("V1", "h1")).build()
        with pytest.raises(ZeroConditionMass):
            relation_conditional(net, ("V1", "h1"), "r1", ("V2", "h2"))

    def test_unknown_tag(self, two_coin):
        with pytest.raises(UnknownName):
            relation_conditional(two_coin, ("V1", "h1"), "r9", ("V2", "h2"))


class TestFoldedGraph:
    def test_three_coin(self, three_coin):
        fg = folded_graph(three_coin)
        assert set(fg.edges) == {("V1", "V2"), ("V2", "V3")}
        assert fg.components() == [["V1", "V2", "V3"]]

    def test_empty(self):
        fg = folded_graph(NetworkBuilder(coin_variables(3)).build())
        assert fg.edges == {}
        assert fg.components() == [["V1"], ["V2"], ["V3"]]

    def test_joint_reflects_edges_only(self, three_coin):
        fg = folded_graph(join_full(three_coin))
        assert set(fg.edges) == {("V1", "V2"), ("V2", "V3")}

    def test_tag_multiset(self, two_coin):
        fg = folded_graph(two_coin)
        assert fg.edges[("V1", "V2")] == {"r1": 3, "r2": 1}


def test_distributions_sum_to_one_small_sample():
    rng = random.Random(5)
    for _ in range(30):
        net = random_network(rng)
        for name in net.variables:
            assert variable_distribution(net, name).total() == 1
