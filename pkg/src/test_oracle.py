import pytest
from hypothesis import given

from conftest import PROPERTY_SETTINGS, cnf_formulas, networks
from flownet.errors import BudgetError, PreconditionError
from flownet.gadgets import CnfFormula, gen_vertex_disjoint_hard
from flownet.maxflow import max_flow
from flownet.netcore import Network
from flownet.oracle import (
    Budget,
    brute_force_sat_assignment,
    enumerate_max_flows,
    gadget_budget,
    oracle_deg_max_flow,
    oracle_p_split,
    oracle_q_separable,
    oracle_vertex_disjoint,
    sat_bruteforce,
    simple_paths,
)
from flownet.psplit import SplitVariant

TINY = Budget(max_arcs=14, max_vertices=12, max_cap=6, max_states=1)


@pytest.fixture
def three_unit_paths():
    return Network.build(5, [(0, 1, 1), (1, 4, 1), (0, 2, 1), (2, 4, 1), (0, 3, 1), (3, 4, 1)], 0, 4)


class TestDegreeOracle:
    def test_out_degree_bound(self, three_unit_paths):
        assert oracle_deg_max_flow(three_unit_paths, 2) == 2
        assert oracle_deg_max_flow(three_unit_paths, 3) == 3

    def test_in_degree_bound(self, three_unit_paths):
        assert oracle_deg_max_flow(three_unit_paths, 3, k_in=1) == 1

    def test_bounds_must_be_positive(self, single_arc):
        with pytest.raises(PreconditionError):
            oracle_deg_max_flow(single_arc, 0)

    def test_budget(self, three_unit_paths):
        with pytest.raises(BudgetError):
            oracle_deg_max_flow(three_unit_paths, 1, budget=TINY)

    @PROPERTY_SETTINGS
    @given(networks(max_vertices=6, max_arcs=8))
    def test_monotone_in_k(self, net):
        values = [oracle_deg_max_flow(net, k) for k in (1, 2, 3)]
        assert values == sorted(values)
        assert values[-1] <= max_flow(net).value


class TestPathOracles:
    def test_simple_paths_of_diamond(self, diamond):
        paths = [[a.id for a in p] for p in simple_paths(diamond)]
        assert sorted(paths) == [[0, 2], [0, 4, 3], [1, 3]]

    def test_parallel_arcs(self, parallel_31):
        assert oracle_p_split(parallel_31, 1) == 3
        assert oracle_p_split(parallel_31, 2) == 4
        assert oracle_vertex_disjoint(parallel_31) == 4

    def test_vertex_disjoint_versus_arc_disjoint(self):
        net = Network.build(3, [(0, 1, 2), (0, 1, 2), (1, 2, 2), (1, 2, 2)], 0, 2)
        assert oracle_p_split(net, 2, SplitVariant.ARC_DISJOINT) == 4
        assert oracle_p_split(net, 2, SplitVariant.VERTEX_DISJOINT) == 2

    def test_separable_modes(self):
        net = Network.build(3, [(0, 1, 2), (0, 1, 2), (1, 2, 2), (1, 2, 2)], 0, 2)
        assert oracle_q_separable(net, 1, "vertex") == 2
        assert oracle_q_separable(net, 2, "vertex") == 4
        assert oracle_q_separable(net, 1, "arc") == 4
        with pytest.raises(PreconditionError, match="mode"):
            oracle_q_separable(net, 1, "edge")

    def test_budget(self, diamond):
        with pytest.raises(BudgetError):
            simple_paths(diamond, TINY)

    @PROPERTY_SETTINGS
    @given(networks(max_vertices=5, max_arcs=7))
    def test_unbounded_p_reaches_max_flow(self, net):
        # a maximum flow decomposes into at most |A| paths
        assert oracle_p_split(net, max(1, net.digraph.arc_count)) == max_flow(net).value


class TestSizeLimits:
    def test_too_many_arcs(self, diamond):
        narrow = Budget(max_arcs=4, max_vertices=12, max_cap=6, max_states=10_000)
        with pytest.raises(BudgetError, match="too many arcs"):
            simple_paths(diamond, narrow)

    def test_too_many_vertices(self, diamond):
        narrow = Budget(max_arcs=14, max_vertices=3, max_cap=6, max_states=10_000)
        with pytest.raises(BudgetError, match="too many vertices"):
            oracle_p_split(diamond, 2, budget=narrow)

    def test_capacity_limit(self):
        net = Network.build(2, [(0, 1, 7)], 0, 1)
        with pytest.raises(BudgetError, match="capacities too large"):
            oracle_deg_max_flow(net, 1)
        assert oracle_deg_max_flow(net, 1, budget=gadget_budget()) == 7

    def test_gadget_preset(self):
        net = gen_vertex_disjoint_hard(CnfFormula(1, ((1, 1, -1),))).network
        with pytest.raises(BudgetError):
            oracle_vertex_disjoint(net)
        assert oracle_vertex_disjoint(net, gadget_budget()) == 3

    def test_enumeration_checks_size(self):
        net = Network.build(2, [(0, 1, 9)], 0, 1)
        with pytest.raises(BudgetError, match="capacities"):
            list(enumerate_max_flows(net))


class TestEnumerateMaxFlows:
    def test_fan(self):
        net = Network.build(3, [(0, 1, 2), (1, 2, 1), (1, 2, 5)], 0, 2)
        vectors = sorted(f.vector() for f in enumerate_max_flows(net))
        assert vectors == [(2, 0, 2), (2, 1, 1)]

    @PROPERTY_SETTINGS
    @given(networks(max_vertices=5, max_arcs=6, max_cap=3))
    def test_every_flow_is_maximum_and_distinct(self, net):
        value = max_flow(net).value
        vectors = [f.vector() for f in enumerate_max_flows(net)]
        assert vectors
        assert len(vectors) == len(set(vectors))
        assert all(f.value == value for f in enumerate_max_flows(net))


class TestSat:
    def test_single_clause(self):
        assert sat_bruteforce(CnfFormula(1, ((1, 1, 1),)))

    def test_contradiction(self):
        assert brute_force_sat_assignment(CnfFormula(1, ((1, 1, 1), (-1, -1, -1)))) is None

    def test_variable_limit(self):
        with pytest.raises(BudgetError):
            brute_force_sat_assignment(CnfFormula(21, ((1, 2, 3),)))

    @PROPERTY_SETTINGS
    @given(cnf_formulas())
    def test_assignment_satisfies(self, f):
        assignment = brute_force_sat_assignment(f)
        if assignment is not None:
            assert f.satisfied_by(assignment)
