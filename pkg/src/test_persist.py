import pytest
from hypothesis import given

from conftest import PROPERTY_SETTINGS, networks, unit_networks
from flownet.errors import BudgetError, PreconditionError
from flownet.maxflow import max_flow
from flownet.netcore import Flow, Network
from flownet.oracle import Budget
from flownet.persist import best_persistent_max_flow_bruteforce, min_arc_deletions_below, persistence_value


@pytest.fixture
def fan():
    """s→a (2), then a→t twice with capacities 1 and 5; only s→a is in a minimum cut."""
    return Network.build(3, [(0, 1, 2), (1, 2, 1), (1, 2, 5)], 0, 2)


class TestPersistenceValue:
    def test_split_flow_survives_one_deletion(self, fan):
        report = persistence_value(Flow(fan, {0: 2, 1: 1, 2: 1}), 1)
        assert report.residual_value == 1
        assert report.worst_set == (2,)
        assert report.eligible_count == 2

    def test_concentrated_flow_does_not(self, fan):
        report = persistence_value(Flow(fan, {0: 2, 2: 2}), 1)
        assert report.residual_value == 0
        assert report.worst_set == (2,)

    def test_no_deletion(self, fan):
        assert persistence_value(Flow(fan, {0: 2, 2: 2}), 0).residual_value == 2

    def test_nothing_eligible_on_a_single_path(self):
        net = Network.build(3, [(0, 1, 1), (1, 2, 1)], 0, 2)
        report = persistence_value(max_flow(net), 3)
        assert report.eligible_count == 0
        assert report.residual_value == 1

    def test_disjoint_unit_paths_are_all_protected(self):
        net = Network.build(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)], 0, 3)
        assert persistence_value(max_flow(net), 2).residual_value == 2

    def test_vertex_mode(self):
        net = Network.build(4, [(0, 1, 2), (1, 3, 5), (1, 2, 5), (2, 3, 5)], 0, 3)
        report = persistence_value(Flow(net, {0: 2, 2: 2, 3: 2}), 1, mode="vertex")
        assert report.residual_value == 0
        assert report.worst_set == (2,)
        assert report.to_dict()["worst_set"] == [3]

    def test_bad_arguments(self, fan):
        flow = max_flow(fan)
        with pytest.raises(PreconditionError):
            persistence_value(flow, -1)
        with pytest.raises(PreconditionError, match="mode"):
            persistence_value(flow, 1, mode="edge")

    def test_budget(self, fan):
        with pytest.raises(BudgetError):
            persistence_value(max_flow(fan), 1, budget=Budget(max_arcs=14, max_vertices=12, max_cap=6, max_states=1))

    @PROPERTY_SETTINGS
    @given(networks(max_vertices=6, max_arcs=8))
    def test_nonincreasing_in_k(self, net):
        flow = max_flow(net)
        values = [persistence_value(flow, k).residual_value for k in range(3)]
        assert values[0] == flow.value
        assert values == sorted(values, reverse=True)


class TestBestPersistent:
    def test_prefers_split_flow(self, fan):
        flow, report = best_persistent_max_flow_bruteforce(fan, 1)
        assert flow.vector() == (2, 1, 1)
        assert report.residual_value == 1

    def test_capacity_guard(self):
        net = Network.build(2, [(0, 1, 9)], 0, 1)
        with pytest.raises(BudgetError, match="capacities"):
            best_persistent_max_flow_bruteforce(net, 1)

    def test_state_budget_bounds_the_enumeration(self, fan):
        with pytest.raises(BudgetError, match="state budget"):
            best_persistent_max_flow_bruteforce(fan, 1, budget=Budget(max_arcs=14, max_vertices=12, max_cap=6, max_states=2))

    @PROPERTY_SETTINGS
    @given(networks(max_vertices=5, max_arcs=6, max_cap=3))
    def test_at_least_the_augmenting_path_flow(self, net):
        flow, report = best_persistent_max_flow_bruteforce(net, 1)
        assert flow.value == max_flow(net).value
        assert report.residual_value >= persistence_value(max_flow(net), 1).residual_value


class TestThreshold:
    def test_already_below(self, single_arc):
        report = min_arc_deletions_below(single_arc, 6)
        assert report.deletions == 0
        assert report.value_after == 5

    def test_one_bottleneck_arc(self, fan):
        report = min_arc_deletions_below(fan, 1)
        assert (report.deletions, report.arc_set, report.value_after) == (1, (0,), 0)

    def test_K_must_be_positive(self, fan):
        with pytest.raises(PreconditionError):
            min_arc_deletions_below(fan, 0)

    @PROPERTY_SETTINGS
    @given(unit_networks(max_vertices=6, max_arcs=8))
    def test_unit_capacities_follow_menger(self, net):
        value = max_flow(net).value
        for K in (1, 2):
            report = min_arc_deletions_below(net, K)
            assert report.deletions == max(0, value - K + 1)
            assert report.value_after < K
