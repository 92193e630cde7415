import networkx as nx
import pytest
from hypothesis import given

from conftest import PROPERTY_SETTINGS, acyclic_networks, networks
from flownet.errors import PreconditionError
from flownet.gadgets import gen_lambda_counterexample
from flownet.maxflow import (
    arc_connectivity,
    brute_force_mincut_arcs,
    line_digraph_network,
    line_vertex_arcs,
    max_flow,
    min_cut,
    mincut_arcs,
    split_vertices,
)
from flownet.netcore import Digraph, Network, is_acyclic


def nx_max_flow_value(net: Network) -> int:
    """Independent max-flow value; parallel arcs are merged by summing capacities."""
    g = nx.DiGraph()
    g.add_nodes_from(range(net.vertex_count))
    for tail, head, cap in net.triples():
        if g.has_edge(tail, head):
            g[tail][head]["capacity"] += cap
        else:
            g.add_edge(tail, head, capacity=cap)
    return nx.maximum_flow_value(g, net.source, net.sink)


class TestMaxFlow:
    def test_single_arc(self, single_arc):
        assert max_flow(single_arc).value == 5

    def test_disjoint_paths_add_up(self):
        net = Network.build(4, [(0, 1, 3), (1, 3, 3), (0, 2, 1), (2, 3, 1)], 0, 3)
        assert max_flow(net).value == 4

    def test_lambda_counterexample(self):
        assert max_flow(gen_lambda_counterexample(3).network).value == 4

    def test_unreachable_sink(self):
        net = Network.build(3, [(0, 1, 4)], 0, 2)
        assert max_flow(net).value == 0

    def test_limit_stops_early(self, parallel_31):
        assert max_flow(parallel_31, limit=2).value == 2

    @PROPERTY_SETTINGS
    @given(networks())
    def test_matches_networkx(self, net):
        assert max_flow(net).value == nx_max_flow_value(net)

    @PROPERTY_SETTINGS
    @given(networks())
    def test_strong_duality(self, net):
        cut = min_cut(net)
        assert cut.capacity == max_flow(net).value
        assert net.source in cut.X and net.sink not in cut.X
        assert set(cut.arcs_across) == {a.id for a in net.arcs if a.tail in cut.X and a.head not in cut.X}


class TestMinCut:
    def test_single_arc(self, single_arc):
        cut = min_cut(single_arc)
        assert cut.X == frozenset({0})
        assert cut.capacity == 5

    def test_series_bottleneck(self):
        net = Network.build(3, [(0, 1, 2), (1, 2, 7)], 0, 2)
        cut = min_cut(net)
        assert cut.capacity == 2
        assert cut.arcs_across == (0,)

    def test_to_dict_is_one_based(self, single_arc):
        assert min_cut(single_arc).to_dict() == {"X": [1], "arcs_across": [0], "capacity": 5}


class TestArcConnectivity:
    def test_no_path(self):
        assert arc_connectivity(Digraph.from_pairs(3, [(0, 1)]), 0, 2) == 0

    def test_parallel_arcs(self):
        assert arc_connectivity(Digraph.from_pairs(2, [(0, 1), (0, 1)]), 0, 1) == 2

    @pytest.mark.parametrize("lam", [3, 4, 5])
    def test_lambda_family(self, lam):
        net = gen_lambda_counterexample(lam).network
        assert arc_connectivity(net.digraph, net.source, net.sink) == lam

    def test_same_endpoints_rejected(self):
        with pytest.raises(PreconditionError):
            arc_connectivity(Digraph.from_pairs(2, [(0, 1)]), 1, 1)


class TestSplitVertices:
    def test_path_gets_middle_arc(self):
        net = Network.build(3, [(0, 1, 5), (1, 2, 5)], 0, 2)
        split = split_vertices(net, 2)
        assert split.network.vertex_count == 4
        assert list(split.special_arcs.values()) == [1]
        special = next(iter(split.special_arcs))
        assert split.network.cap(special) == 2
        assert max_flow(split.network).value == 2

    def test_nothing_to_split(self, single_arc):
        split = split_vertices(single_arc, 3)
        assert split.network.triples() == single_arc.triples()
        assert split.special_arcs == {}

    def test_original_flow_recovered(self, diamond):
        split = split_vertices(diamond, 1)
        flow = max_flow(split.network)
        assert sum(x for a, x in split.original_x(flow).items() if diamond.digraph.arc(a).tail == 0) == flow.value


class TestLineDigraph:
    def test_capacity_rule(self):
        net = Network.build(3, [(0, 1, 3), (1, 2, 2)], 0, 2)
        line = line_digraph_network(net)
        # vertices 0, 1 stand for the two arcs; s' = 2, t' = 3
        assert (line.source, line.sink) == (2, 3)
        assert sorted(line.triples()) == [(0, 1, 2), (1, 3, 2), (2, 0, 3)]
        assert line_vertex_arcs(net) == (0, 1)

    def test_direct_arc_rejected(self, parallel_31):
        with pytest.raises(PreconditionError, match="subdivide"):
            line_digraph_network(parallel_31)

    def test_cyclic_rejected(self):
        net = Network.build(3, [(0, 1, 1), (1, 0, 1), (1, 2, 1)], 0, 2)
        with pytest.raises(PreconditionError, match="acyclic"):
            line_digraph_network(net)

    def test_subdivided_single_arc_keeps_value(self):
        net = Network.build(3, [(0, 2, 4), (2, 1, 4)], 0, 1)
        assert max_flow(line_digraph_network(net)).value == max_flow(net).value


class TestMincutArcs:
    def test_series_caps(self):
        net = Network.build(3, [(0, 1, 2), (1, 2, 7)], 0, 2)
        assert mincut_arcs(net) == frozenset({0})

    def test_fan_in_after_bottleneck(self):
        net = Network.build(3, [(0, 1, 2), (1, 2, 1), (1, 2, 5)], 0, 2)
        assert mincut_arcs(net) == frozenset({0})

    def test_unreachable_sink(self):
        net = Network.build(3, [(0, 1, 2)], 0, 2)
        assert mincut_arcs(net) == frozenset()

    def test_two_disjoint_unit_paths(self):
        net = Network.build(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)], 0, 3)
        assert mincut_arcs(net) == frozenset({0, 1, 2, 3})

    @PROPERTY_SETTINGS
    @given(networks(max_vertices=6, max_arcs=9))
    def test_matches_cut_enumeration(self, net):
        assert mincut_arcs(net) == brute_force_mincut_arcs(net)

    @PROPERTY_SETTINGS
    @given(acyclic_networks())
    def test_line_network_of_acyclic_input_is_acyclic(self, net):
        if any(a.tail == net.source and a.head == net.sink for a in net.arcs):
            return
        assert is_acyclic(line_digraph_network(net).digraph)[0]
