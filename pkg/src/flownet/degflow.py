"""
Degree-constrained flows.

A (Δ⁺≤k)-flow is an integer flow whose support has out-degree at most k at
every vertex (parallel arcs count separately). The general maximization is
NP-hard; this module covers the polynomial pieces:

- k = 1 is the widest path problem,
- unit capacities reduce to vertex splitting with bound k,
- deciding whether a (Δ⁺≤k)-flow of value k+1 exists, through the chain of
  (s,t)-vertex separators and one auxiliary split network per candidate
  heavy out-arc of each block source.
"""

import heapq
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .decomp import acyclify, trim_to_value
from .errors import AlgorithmError, PreconditionError
from .maxflow import max_flow, split_vertices
from .netcore import Arc, ArcId, Digraph, Flow, Network, VertexId, prune_to_st_paths, support

logger = logging.getLogger(__name__)


def widest_path(net: Network) -> Tuple[Optional[List[Arc]], int]:
    """
    An s→t path maximizing its smallest capacity, with that bottleneck.
    (None, 0) when t is unreachable.
    """
    s, t = net.source, net.sink
    best: Dict[VertexId, int] = {}
    parent: Dict[VertexId, Optional[Arc]] = {s: None}
    heap: List[Tuple[int, VertexId]] = [(-net.max_capacity - 1, s)]
    done: Set[VertexId] = set()
    best[s] = net.max_capacity + 1
    while heap:
        neg, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        if v == t:
            break
        for arc in net.digraph.out_arcs(v):
            width = min(-neg, net.cap(arc.id))
            if arc.head not in done and width > best.get(arc.head, 0):
                best[arc.head] = width
                parent[arc.head] = arc
                heapq.heappush(heap, (-width, arc.head))
    if t not in done:
        return None, 0
    path: List[Arc] = []
    v = t
    while parent[v] is not None:
        path.append(parent[v])
        v = parent[v].tail
    path.reverse()
    return path, best[t]


def path_flow(net: Network, path: List[Arc], value: int) -> Flow:
    return Flow(net, {a.id: value for a in path})


def unit_capacity_deg_max_flow(net: Network, k: int) -> Flow:
    """
    Maximum (Δ⁺≤k)-flow of a unit-capacity network: every vertex other than
    t becomes x⁻→x⁺ with capacity k, so throughput and out-degree coincide.
    """
    if not net.is_unit():
        raise PreconditionError("unit_capacity_deg_max_flow needs all capacities equal to 1")
    if k < 1:
        raise PreconditionError(f"k must be at least 1, got {k}")
    split = split_vertices(net, k, exclude={net.sink})
    flow = max_flow(split.network)
    result = acyclify(Flow(net, split.original_x(flow)))
    logger.info(f"unit (Δ⁺≤{k}) max flow: value {result.value}")
    return result


def st_vertex_separators(d: Digraph, s: VertexId, t: VertexId) -> List[VertexId]:
    """Vertices lying on every s→t path, in the order they appear along one such path."""
    path = d.find_path(s, t)
    if path is None:
        raise PreconditionError(f"vertex {t + 1} is not reachable from {s + 1}")
    on_path = [a.head for a in path[:-1]]
    return [v for v in on_path if t not in d.reachable(s, blocked_vertices=[v])]


@dataclass(frozen=True)
class SeparatorChain:
    """
    separators[0] = s and separators[-1] = t; block j runs from separators[j]
    to separators[j+1] and owns the arcs in block_arcs[j].
    """
    network: Network
    separators: Tuple[VertexId, ...]
    blocks: Tuple[FrozenSet[VertexId], ...]
    block_arcs: Tuple[FrozenSet[ArcId], ...]

    def block_network(self, j: int) -> Network:
        sub = self.network.digraph.subdigraph(self.block_arcs[j])
        caps = {a.id: self.network.cap(a.id) for a in sub.arcs}
        return Network(sub, self.separators[j], self.separators[j + 1], caps)

    def to_dict(self) -> Dict[str, list]:
        return {
            "separators": [v + 1 for v in self.separators],
            "blocks": [sorted(v + 1 for v in block) for block in self.blocks],
            "block_arcs": [sorted(arcs) for arcs in self.block_arcs],
        }


def block_chain(net: Network) -> SeparatorChain:
    """
    Splits the pruned network at its (s,t)-vertex separators. Every simple
    s→t path meets the separators in the same order, so consecutive blocks
    share exactly one separator and no arc.
    """
    pruned = prune_to_st_paths(net)
    d = pruned.digraph
    chain = [net.source] + st_vertex_separators(d, net.source, net.sink) + [net.sink]
    blocks: List[FrozenSet[VertexId]] = []
    block_arcs: List[FrozenSet[ArcId]] = []
    for j in range(len(chain) - 1):
        left, right = chain[j], chain[j + 1]
        others = [v for v in chain if v not in (left, right)]
        forward = d.reachable(left, blocked_vertices=others, stop_at=[right])
        backward = d.reachable(right, reverse=True, blocked_vertices=others, stop_at=[left])
        block = frozenset(forward & backward)
        arcs = frozenset(
            a.id for a in d.arcs
            if a.tail in block and a.head in block and a.tail != right and a.head != left
        )
        blocks.append(block)
        block_arcs.append(arcs)
    logger.debug(f"block_chain: {len(chain) - 2} separators")
    return SeparatorChain(pruned, tuple(chain), tuple(blocks), tuple(block_arcs))


def _block_flow(block: Network, k: int) -> Optional[Dict[ArcId, int]]:
    """
    A flow of value k+1 in a separator-free block with out-degree ≤ k, or None.

    For each out-arc a = s v of capacity ≥ 2 (by ArcId): a new source s* gets
    a in place of s (same ArcId) and an arc s*→s of capacity k−1; every other
    vertex except the block sink is split with bound k.
    """
    s, t = block.source, block.sink
    if block.digraph.max_out_degree() <= k:
        flow = max_flow(block, limit=k + 1)
        return dict(flow.x) if flow.value >= k + 1 else None
    n = block.vertex_count
    star = n
    top_id = max(block.digraph.arc_ids, default=-1) + 1
    inside = block.digraph.incident_vertices()
    for heavy in block.digraph.out_arcs(s):
        if block.cap(heavy.id) < 2:
            continue
        arcs: List[Arc] = []
        caps: Dict[ArcId, int] = {}
        for arc in block.arcs:
            arcs.append(Arc(arc.id, star, arc.head) if arc.id == heavy.id else arc)
            caps[arc.id] = block.cap(arc.id)
        if k > 1:
            arcs.append(Arc(top_id, star, s))
            caps[top_id] = k - 1
        aux = Network(Digraph(n + 1, tuple(arcs)), star, t, caps)
        outside = {v for v in range(n) if v not in inside}
        split = split_vertices(aux, k, exclude={star, s, t} | outside)
        flow = max_flow(split.network, limit=k + 1)
        logger.debug(f"block {s + 1}->{t + 1}: heavy arc {heavy.id} gives value {flow.value}")
        if flow.value >= k + 1:
            return {a: f for a, f in flow.x.items() if a < top_id}
    return None


def deg_flow_value_k_plus_1(net: Network, k: int) -> Optional[Flow]:
    """
    A flow of value at least k+1 whose support has Δ⁺ ≤ k, or None when no
    such flow exists.
    """
    if k < 1:
        raise PreconditionError(f"k must be at least 1, got {k}")
    pruned = prune_to_st_paths(net)
    if k == 1:
        path, width = widest_path(pruned)
        if path is None or width < 2:
            return None
        return path_flow(net, path, width)

    if pruned.digraph.max_out_degree() <= k:
        flow = max_flow(pruned)
        logger.info(f"Δ⁺ ≤ {k} already; max flow {flow.value}")
        return Flow(net, flow.x) if flow.value >= k + 1 else None

    if max_flow(pruned, limit=k + 1).value < k + 1:
        return None

    chain = block_chain(pruned)
    logger.info(f"(Δ⁺≤{k}) value {k + 1}: {len(chain.separators) - 2} separators, {len(chain.blocks)} blocks")
    total: Dict[ArcId, int] = {}
    for j in range(len(chain.blocks)):
        block = chain.block_network(j)
        found = _block_flow(block, k)
        if found is None:
            logger.info(f"block {j} ({block.source + 1}->{block.sink + 1}) has no degree-bounded flow of value {k + 1}")
            return None
        trimmed = trim_to_value(acyclify(Flow(block, found)), k + 1)
        for arc_id, amount in trimmed.x.items():
            total[arc_id] = total.get(arc_id, 0) + amount

    result = Flow(net, total)
    degree = support(result).max_out_degree()
    if result.value < k + 1 or degree > k:
        raise AlgorithmError(f"recombined flow has value {result.value} and Δ⁺ {degree}")
    return result
