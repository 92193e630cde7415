"""
Exact p-vertex-decomposable maximum flow on acyclic networks.

A W-tricot is a family of paths from s, pairwise meeting only at s, one
ending at each vertex of W; its value is the tuple of path bottlenecks.
The dynamic program keeps, for every endpoint set W, the tricots whose
values are not dominated, sweeping the sets in increasing order of their
rank tuples. The arc-disjoint problem reduces to it on the line digraph.
"""

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import debug_checks, tricot_budget
from .decomp import Component
from .errors import AlgorithmError, BudgetError, PreconditionError
from .maxflow import line_digraph_network, line_vertex_arcs
from .netcore import Arc, ArcId, Digraph, Flow, Network, VertexId, is_acyclic, prune_to_st_paths
from .psplit import PSplitSolution, empty_solution

logger = logging.getLogger(__name__)

# value tuple, and for each path the ArcIds it uses in the subdivided network
Entry = Tuple[Tuple[int, ...], Tuple[Tuple[ArcId, ...], ...]]


@dataclass(frozen=True)
class Subdivision:
    """Every arc leaving s or entering t split once; `origin` maps each new ArcId to the arc it came from."""
    network: Network
    origin: Dict[ArcId, ArcId]


def subdivide_terminal_arcs(net: Network) -> Subdivision:
    n = net.vertex_count
    arcs: List[Arc] = []
    caps: Dict[ArcId, int] = {}
    origin: Dict[ArcId, ArcId] = {}

    def add(tail: VertexId, head: VertexId, cap: int, source_arc: ArcId) -> None:
        arc_id = len(arcs)
        arcs.append(Arc(arc_id, tail, head))
        caps[arc_id] = cap
        origin[arc_id] = source_arc

    for arc in sorted(net.arcs):
        cap = net.cap(arc.id)
        if arc.tail == net.source or arc.head == net.sink:
            mid = n
            n += 1
            add(arc.tail, mid, cap, arc.id)
            add(mid, arc.head, cap, arc.id)
        else:
            add(arc.tail, arc.head, cap, arc.id)
    return Subdivision(Network(Digraph(n, tuple(arcs)), net.source, net.sink, caps), origin)


@dataclass
class DominanceSet:
    """Tricots sharing one endpoint set, pairwise incomparable in value."""
    entries: Dict[Tuple[int, ...], Tuple[Tuple[ArcId, ...], ...]] = field(default_factory=dict)

    def offer(self, value: Tuple[int, ...], paths: Tuple[Tuple[ArcId, ...], ...]) -> bool:
        for other in self.entries:
            if all(o >= v for o, v in zip(other, value)):
                return False
        dominated = [other for other in self.entries if all(v >= o for v, o in zip(value, other))]
        for other in dominated:
            del self.entries[other]
        self.entries[value] = paths
        return True

    def items(self) -> List[Entry]:
        return list(self.entries.items())


def _acyclic_order(net: Network) -> List[VertexId]:
    """Topological order of the incident vertices with s first, then N⁺(s)."""
    d = net.digraph
    ok, order = is_acyclic(d)
    if not ok:
        raise PreconditionError("tricot needs an acyclic network")
    head = [net.source] + d.out_neighbours(net.source)
    placed = set(head)
    incident = d.incident_vertices() | {net.source}
    return head + [v for v in order if v not in placed and v in incident]


def _closure(net: Network, order: Sequence[VertexId]) -> np.ndarray:
    """reach[i, j] is True when order[j] is reachable from order[i] (reflexive)."""
    index = {v: i for i, v in enumerate(order)}
    reach = np.eye(len(order), dtype=bool)
    for v in reversed(order):
        row = reach[index[v]]
        for arc in net.digraph.out_arcs(v):
            if arc.head in index:
                row |= reach[index[arc.head]]
    return reach


def _check_entry(net: Network, W: Tuple[VertexId, ...], value: Tuple[int, ...], paths) -> None:
    seen: set = set()
    for end, bottleneck, arc_ids in zip(W, value, paths):
        arcs = [net.digraph.arc(a) for a in arc_ids]
        if arcs[0].tail != net.source or arcs[-1].head != end:
            raise AlgorithmError(f"tricot path does not run from s to {end + 1}")
        inner = {a.head for a in arcs}
        if inner & seen:
            raise AlgorithmError("tricot paths share a vertex other than s")
        seen |= inner
        if min(net.cap(a) for a in arc_ids) != bottleneck:
            raise AlgorithmError("tricot value does not match its bottleneck")


def _best_tricot(
    net: Network, size: int, order: List[VertexId], reach: np.ndarray, limit: int
) -> Optional[Tuple[Tuple[VertexId, ...], Entry]]:
    """Best W-tricot with |W| = size and W ⊆ N⁻(t), by the dominance sweep; at most `limit` tricots are generated."""
    d = net.digraph
    s, t = net.source, net.sink
    rank = {v: i for i, v in enumerate(order)}
    checks = debug_checks()
    table: Dict[Tuple[VertexId, ...], DominanceSet] = {}
    heap: List[Tuple[Tuple[int, ...], Tuple[VertexId, ...]]] = []
    generated = 0

    def key(W: Tuple[VertexId, ...]) -> Tuple[int, ...]:
        return tuple(sorted((rank[v] for v in W), reverse=True))

    def insert(W, value, paths) -> None:
        nonlocal generated
        generated += 1
        if generated > limit:
            raise BudgetError("tricot dynamic program: state budget exhausted", estimate=generated, limit=limit)
        if checks:
            _check_entry(net, W, value, paths)
        cell = table.get(W)
        if cell is None:
            cell = table[W] = DominanceSet()
            heapq.heappush(heap, (key(W), W))
        cell.offer(value, paths)

    first = sorted(d.out_arcs(s), key=lambda a: rank[a.head])
    for combo in itertools.combinations(first, size):
        if len({a.head for a in combo}) < size:
            continue
        insert(tuple(a.head for a in combo), tuple(net.cap(a.id) for a in combo), tuple((a.id,) for a in combo))

    best: Optional[Tuple[Tuple[VertexId, ...], Entry]] = None
    best_key = None
    processed = 0
    while heap:
        _, W = heapq.heappop(heap)
        processed += 1
        cols = [rank[w] for w in W]
        if all(any(a.head == t for a in d.out_arcs(w)) for w in W):
            for value, paths in table[W].items():
                candidate = (sum(value), tuple(-r for r in cols), value)
                if best_key is None or candidate > best_key:
                    best_key, best = candidate, (W, (value, paths))
        for value, paths in table[W].items():
            for j, u in enumerate(W):
                for arc in d.out_arcs(u):
                    v = arc.head
                    if v == t or v not in rank or reach[rank[v], cols].any():
                        continue
                    merged = sorted(
                        [(w, value[h], paths[h]) for h, w in enumerate(W) if h != j]
                        + [(v, min(value[j], net.cap(arc.id)), paths[j] + (arc.id,))],
                        key=lambda e: rank[e[0]],
                    )
                    insert(tuple(e[0] for e in merged), tuple(e[1] for e in merged), tuple(e[2] for e in merged))
    logger.debug(f"tricot p'={size}: {processed} endpoint sets, {sum(len(c.entries) for c in table.values())} tricots kept")
    return best


def _estimate(net: Network, order: Sequence[VertexId], p: int) -> int:
    """
    Upper bound on the tricots the sweep keeps: endpoint sets of up to p of
    the ordered vertices, each holding an antichain of value tuples drawn
    from the distinct capacities.
    """
    endpoints = len(order) - 1
    values = max(1, len(set(net.capacity.values())))
    return sum(comb(endpoints, size) * values ** (size - 1) for size in range(1, p + 1))


def tricot_paths(net: Network, p: int, budget: Optional[int] = None) -> List[Tuple[List[ArcId], int]]:
    """
    Optimal internally vertex-disjoint s→t paths (at most p) as lists of
    original ArcIds with their values. Ties: fewer paths, then smaller
    endpoint ranks, then larger values. `budget` caps the dynamic-program
    states (FLOWNET_TRICOT_BUDGET when not given).
    """
    if p < 1:
        raise PreconditionError(f"p must be at least 1, got {p}")
    ok, _ = is_acyclic(net.digraph)
    if not ok:
        raise PreconditionError("tricot needs an acyclic network")
    sub = subdivide_terminal_arcs(net)
    work = prune_to_st_paths(sub.network)
    order = _acyclic_order(work)
    estimate = _estimate(work, order, p)
    limit = budget if budget is not None else tricot_budget()
    if estimate > limit:
        logger.warning(f"tricot refused: estimate {estimate} > limit {limit}")
        raise BudgetError("tricot dynamic program", estimate=estimate, limit=limit)
    reach = _closure(work, order)
    logger.info(f"tricot: {len(order)} ordered vertices, p = {p}")

    best = None
    best_score = None
    for size in range(1, p + 1):
        found = _best_tricot(work, size, order, reach, limit)
        if found is None:
            continue
        W, (value, _) = found
        if best_score is None or sum(value) > best_score:
            best, best_score = found, sum(value)
    if best is None:
        return []
    W, (value, paths) = best
    result: List[Tuple[List[ArcId], int]] = []
    for end, bottleneck, arc_ids in zip(W, value, paths):
        final = next(a for a in work.digraph.out_arcs(end) if a.head == net.sink)
        original = list(dict.fromkeys(sub.origin[a] for a in arc_ids + (final.id,)))
        result.append((original, bottleneck))
    return result


def _solution(net: Network, paths: List[Tuple[List[ArcId], int]]) -> PSplitSolution:
    if not paths:
        return empty_solution(net)
    x: Dict[ArcId, int] = {}
    components: List[Component] = []
    for arc_ids, value in paths:
        arcs = [net.digraph.arc(a) for a in arc_ids]
        for a in arc_ids:
            x[a] = x.get(a, 0) + value
        vertices = tuple([arcs[0].tail] + [a.head for a in arcs])
        components.append(Component("path", vertices, tuple(arc_ids), value))
    flow = Flow(net, x)
    return PSplitSolution(flow, tuple(components), len(components), None, len(components))


def tricot_dp_exact(net: Network, p: int, budget: Optional[int] = None) -> PSplitSolution:
    """Maximum flow made of at most p internally vertex-disjoint path-flows; acyclic input only."""
    solution = _solution(net, tricot_paths(net, p, budget))
    logger.info(f"tricot: value {solution.value} with {solution.p_used} paths")
    return solution


def arc_disjoint_exact_acyclic(net: Network, p: int, budget: Optional[int] = None) -> PSplitSolution:
    """
    Maximum flow made of at most p arc-disjoint path-flows on an acyclic
    network: vertex-disjoint paths of the line digraph are arc-disjoint paths
    of the input. s→t arcs are subdivided first.
    """
    ok, _ = is_acyclic(net.digraph)
    if not ok:
        raise PreconditionError("arc-disjoint exact solver needs an acyclic network")
    n = net.vertex_count
    arcs: List[Arc] = []
    caps: Dict[ArcId, int] = {}
    origin: Dict[ArcId, ArcId] = {}
    for arc in sorted(net.arcs):
        pieces = [(arc.tail, n), (n, arc.head)] if (arc.tail, arc.head) == (net.source, net.sink) else [(arc.tail, arc.head)]
        if len(pieces) == 2:
            n += 1
        for tail, head in pieces:
            origin[len(arcs)] = arc.id
            caps[len(arcs)] = net.cap(arc.id)
            arcs.append(Arc(len(arcs), tail, head))
    plain = Network(Digraph(n, tuple(arcs)), net.source, net.sink, caps)
    line = line_digraph_network(plain)
    line_arcs = line_vertex_arcs(plain)
    paths: List[Tuple[List[ArcId], int]] = []
    for line_arc_ids, value in tricot_paths(line, p, budget):
        visited = [line.digraph.arc(a).head for a in line_arc_ids[:-1]]
        original = list(dict.fromkeys(origin[line_arcs[v]] for v in visited))
        paths.append((original, value))
    solution = _solution(net, paths)
    logger.info(f"arc-disjoint exact: value {solution.value} with {solution.p_used} paths")
    return solution
