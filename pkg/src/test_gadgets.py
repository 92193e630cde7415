import json

import pytest

from flownet.errors import BudgetError, InputError, PreconditionError
from flownet.gadgets import (
    LINKAGE_NEGATIVE,
    LINKAGE_POSITIVE,
    CnfFormula,
    b2sat_value9_witness,
    canonical_b2sat_formula,
    gen_b2sat_value9_network,
    gen_inout_tail,
    gen_lambda_counterexample,
    gen_psplit_hard,
    gen_random_network,
    gen_sat_deg_network,
    gen_separable_hard,
    gen_vertex_disjoint_hard,
    parse_dimacs_cnf,
    sample_formula,
    sat_deg_witness,
    vertex_disjoint_witness,
)
from flownet.maxflow import arc_connectivity, max_flow
from flownet.netcore import Network, is_acyclic, support
from flownet.oracle import (
    brute_force_sat_assignment,
    enumerate_max_flows,
    gadget_budget,
    oracle_deg_max_flow,
    oracle_p_split,
    oracle_q_separable,
    oracle_vertex_disjoint,
)

UNSATISFIABLE = CnfFormula(1, ((1, 1, 1), (-1, -1, -1)))
TWO_VARIABLES = CnfFormula(2, ((1, 2, -1), (-2, 1, 2)))


class TestCnf:
    def test_dimacs_round_trip(self):
        f = sample_formula()
        assert parse_dimacs_cnf("c sample\n" + f.to_dimacs()) == f

    @pytest.mark.parametrize(
        "text, message",
        [
            ("1 2 3 0\n", "before the 'p cnf' header"),
            ("p cnf 3 1\n1 2 0\n", "exactly 3"),
            ("p cnf 3 2\n1 2 3 0\n", "declared 2 clauses"),
            ("p cnf 3 1\n1 2 3\n", "not terminated"),
            ("p cnf 3 1\n1 x 3 0\n", "literal"),
        ],
    )
    def test_malformed_dimacs(self, text, message):
        with pytest.raises(InputError, match=message):
            parse_dimacs_cnf(text)

    def test_literal_out_of_range(self):
        with pytest.raises(InputError, match="outside"):
            CnfFormula(2, ((1, 2, 3),))

    def test_padding_adds_missing_polarity(self):
        assert CnfFormula(1, ((1, 1, 1),)).padded().clauses == ((1, 1, 1), (1, -1, 1))
        assert sample_formula().padded() == sample_formula()

    def test_b2(self):
        assert canonical_b2sat_formula().is_b2()
        assert not sample_formula().is_b2()


class TestSatDegGadget:
    def test_sample_formula_sizes(self):
        gadget = gen_sat_deg_network(sample_formula())
        net = gadget.network
        assert (net.vertex_count, net.digraph.arc_count) == (18, 32)
        assert net.cap(gadget.arc("s", "u_1")) == 10
        assert net.cap(gadget.arc("u_1", "u_2")) == 7
        assert net.cap(gadget.arc("u_4", "t")) == 7
        assert net.cap(gadget.arc("u_1", "y_1,1")) == 3
        assert gadget.target == {"value": 10, "max_out_degree": 2}
        assert is_acyclic(net.digraph)[0]

    @pytest.mark.parametrize("k", [2, 3])
    def test_witness_reaches_target(self, k):
        gadget = gen_sat_deg_network(sample_formula(), k)
        flow = sat_deg_witness(gadget, (True, True, False))
        assert flow.value == gadget.target["value"]
        assert support(flow).max_out_degree() <= k

    def test_witness_needs_satisfying_assignment(self):
        gadget = gen_sat_deg_network(sample_formula())
        with pytest.raises(PreconditionError, match="does not satisfy"):
            sat_deg_witness(gadget, (True, True, True))

    def test_satisfiable_reaches_target(self):
        gadget = gen_sat_deg_network(TWO_VARIABLES)
        assert gadget.target["value"] == 7
        assert oracle_deg_max_flow(gadget.network, 2, budget=gadget_budget()) == 7

    def test_unsatisfiable_stays_below_target(self):
        gadget = gen_sat_deg_network(UNSATISFIABLE)
        assert (gadget.network.vertex_count, gadget.network.digraph.arc_count) == (12, 19)
        assert oracle_deg_max_flow(gadget.network, 2, budget=gadget_budget()) < gadget.target["value"]

    def test_k_below_two(self):
        with pytest.raises(PreconditionError):
            gen_sat_deg_network(sample_formula(), 1)


class TestInOutTail:
    def test_structure(self):
        tail = gen_inout_tail(gen_sat_deg_network(UNSATISFIABLE))
        net = tail.network
        assert (net.vertex_count, net.digraph.arc_count) == (14, 21)
        assert net.cap(tail.arc("t_1", "t_2")) == 1
        assert net.cap(tail.arc("t_2", "t")) == 2
        assert tail.target["max_in_degree"] == 2
        assert tail.metadata["kind"] == "sat_deg_inout"

    def test_satisfiable_keeps_value_with_in_degree_two(self):
        tail = gen_inout_tail(gen_sat_deg_network(TWO_VARIABLES))
        assert oracle_deg_max_flow(tail.network, 2, 2, gadget_budget()) == 7

    def test_needs_k_two(self):
        with pytest.raises(PreconditionError):
            gen_inout_tail(gen_sat_deg_network(sample_formula(), 3))


class TestValueNineGadget:
    def test_canonical_formula(self):
        f = canonical_b2sat_formula()
        gadget = gen_b2sat_value9_network(f)
        assert (gadget.network.vertex_count, gadget.network.digraph.arc_count) == (58, 96)
        flow = b2sat_value9_witness(gadget, brute_force_sat_assignment(f))
        assert flow.value == 9
        assert support(flow).max_out_degree() <= 2

    def test_spine_capacity(self):
        gadget = gen_b2sat_value9_network(canonical_b2sat_formula())
        assert max_flow(gadget.network).value >= 9

    def test_rejects_unbalanced_formula(self):
        with pytest.raises(PreconditionError, match="exactly twice"):
            gen_b2sat_value9_network(sample_formula())


class TestLambdaCounterexample:
    def test_smallest_member(self):
        gadget = gen_lambda_counterexample(3)
        net = gadget.network
        assert (net.vertex_count, net.digraph.arc_count) == (6, 9)
        assert arc_connectivity(net.digraph, net.source, net.sink) == 3
        flows = list(enumerate_max_flows(net))
        assert len(flows) == 1
        assert flows[0].value == gadget.target["max_flow"] == 4
        assert arc_connectivity(support(flows[0]), net.source, net.sink) == 2

    @pytest.mark.parametrize("lam", [4, 5])
    def test_every_max_flow_has_support_lambda_two(self, lam):
        gadget = gen_lambda_counterexample(lam)
        net = gadget.network
        assert arc_connectivity(net.digraph, net.source, net.sink) == lam
        flows = list(enumerate_max_flows(net, gadget_budget()))
        assert flows
        for flow in flows:
            assert flow.value == 2 * lam - 2
            assert arc_connectivity(support(flow), net.source, net.sink) == 2

    def test_default_budget_refuses_larger_members(self):
        with pytest.raises(BudgetError, match="too many arcs"):
            list(enumerate_max_flows(gen_lambda_counterexample(5).network))

    def test_max_flow_grows_with_lambda(self):
        assert max_flow(gen_lambda_counterexample(4).network).value == 6

    def test_lambda_below_three(self):
        with pytest.raises(PreconditionError):
            gen_lambda_counterexample(2)


class TestPSplitHard:
    def test_positive_linkage_reaches_upper_value(self):
        gadget = gen_psplit_hard(4, LINKAGE_POSITIVE)
        assert (gadget.network.vertex_count, gadget.network.digraph.arc_count) == (10, 12)
        assert oracle_p_split(gadget.network, 4, budget=gadget_budget()) == gadget.target["positive_value"] == 6

    def test_negative_linkage_stays_at_lower_value(self):
        gadget = gen_psplit_hard(4, LINKAGE_NEGATIVE)
        assert gadget.network.digraph.arc_count == 14
        assert oracle_p_split(gadget.network, 4, budget=gadget_budget()) <= gadget.target["negative_value"] == 5

    def test_odd_p_adds_direct_arc(self):
        gadget = gen_psplit_hard(5, LINKAGE_POSITIVE)
        assert gadget.target == {"positive_value": 7, "negative_value": 6}
        assert gadget.arc("s", "t") is not None
        assert gadget.metadata["copies"] == 2

    def test_rho2_family(self):
        gadget = gen_psplit_hard(4, LINKAGE_POSITIVE, "rho2")
        assert gadget.metadata["copies"] == 2
        assert gadget.network.cap(gadget.arc("s", "s2^1")) == 3


class TestVertexDisjointGadget:
    def test_single_clause(self):
        f = CnfFormula(1, ((1, 1, -1),))
        gadget = gen_vertex_disjoint_hard(f)
        assert (gadget.network.vertex_count, gadget.network.digraph.arc_count) == (9, 15)
        assert gadget.target == {"value": 3, "paths": 2}
        assert oracle_vertex_disjoint(gadget.network, gadget_budget()) == 3
        assert vertex_disjoint_witness(gadget, (True,)).value == 3

    def test_unsatisfiable_stays_below_target(self):
        gadget = gen_vertex_disjoint_hard(UNSATISFIABLE)
        assert oracle_vertex_disjoint(gadget.network, gadget_budget()) < gadget.target["value"]


class TestSeparableGadget:
    def test_q_one_is_identity(self):
        net = Network.build(3, [(0, 1, 1), (1, 2, 1)], 0, 2)
        gadget = gen_separable_hard(net, 1)
        assert gadget.target["offset"] == 0
        assert gadget.network.triples() == net.triples()

    def test_single_path(self):
        net = Network.build(3, [(0, 1, 1), (1, 2, 1)], 0, 2)
        gadget = gen_separable_hard(net, 2)
        assert gadget.network.vertex_count == 5
        assert gadget.network.digraph.arc_count == 6
        assert oracle_q_separable(gadget.network, 2, budget=gadget_budget()) == oracle_vertex_disjoint(net) + gadget.target["offset"] == 3

    def test_two_paths(self):
        net = Network.build(4, [(0, 1, 2), (1, 3, 1), (0, 2, 1), (2, 3, 2)], 0, 3)
        gadget = gen_separable_hard(net, 2)
        assert gadget.target["offset"] == 4
        assert oracle_q_separable(gadget.network, 2, budget=gadget_budget()) == 6

    def test_preconditions(self):
        with pytest.raises(PreconditionError, match="acyclic"):
            gen_separable_hard(Network.build(3, [(0, 1, 1), (1, 0, 1), (1, 2, 1)], 0, 2), 2)
        with pytest.raises(PreconditionError, match="capacities"):
            gen_separable_hard(Network.build(2, [(0, 1, 3)], 0, 1), 2)


class TestRandomNetwork:
    def test_seed_is_reproducible(self):
        assert gen_random_network(7).network.triples() == gen_random_network(7).network.triples()

    def test_flags(self):
        acyclic = gen_random_network(3, vertices=7, arcs=15, acyclic=True)
        assert is_acyclic(acyclic.network.digraph)[0]
        assert gen_random_network(3, unit=True).network.is_unit()

    def test_labels(self):
        gadget = gen_random_network(1, vertices=4)
        assert json.loads(gadget.labels_json()) == {"s": 1, "t": 4, "v2": 2, "v3": 3}
        with pytest.raises(InputError):
            gadget.arc("s", "nowhere")
