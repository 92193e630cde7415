"""
Classical flow subroutines: shortest-augmenting-path max flow, minimum cuts,
arc-connectivity, vertex splitting, the line-digraph network and A_mincut.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .config import Config
from .errors import AlgorithmError, BudgetError, PreconditionError
from .netcore import Arc, ArcId, Digraph, Flow, Network, VertexId, is_acyclic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cut:
    """An (s,t)-cut (X, X̄): X holds s and not t."""
    X: FrozenSet[VertexId]
    arcs_across: Tuple[ArcId, ...]
    capacity: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "X": sorted(v + 1 for v in self.X),
            "arcs_across": list(self.arcs_across),
            "capacity": self.capacity,
        }


class ResidualGraph:
    """
    Residual view of a network under a mutable integer flow.

    Adjacency entries are (arc_id, forward) pairs ordered by ArcId, so BFS
    explores smaller ArcIds first and augmenting paths are deterministic.
    """

    def __init__(self, network: Network, x: Optional[Dict[ArcId, int]] = None):
        self.network = network
        self.flow: Dict[ArcId, int] = {a.id: 0 for a in network.arcs}
        if x:
            self.flow.update(x)
        self.adj: List[List[Tuple[ArcId, bool]]] = [[] for _ in range(network.vertex_count)]
        for arc in sorted(network.arcs):
            self.adj[arc.tail].append((arc.id, True))
            self.adj[arc.head].append((arc.id, False))
        for entries in self.adj:
            entries.sort(key=lambda e: (e[0], not e[1]))

    def residual(self, arc_id: ArcId, forward: bool) -> int:
        return self.network.cap(arc_id) - self.flow[arc_id] if forward else self.flow[arc_id]

    def _other_end(self, arc_id: ArcId, forward: bool) -> VertexId:
        arc = self.network.digraph.arc(arc_id)
        return arc.head if forward else arc.tail

    def reachable(self, start: VertexId) -> Set[VertexId]:
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for arc_id, forward in self.adj[v]:
                if self.residual(arc_id, forward) <= 0:
                    continue
                w = self._other_end(arc_id, forward)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def shortest_augmenting_path(self, s: VertexId, t: VertexId) -> Optional[List[Tuple[ArcId, bool]]]:
        parent: Dict[VertexId, Optional[Tuple[ArcId, bool]]] = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            v = queue.popleft()
            for arc_id, forward in self.adj[v]:
                if self.residual(arc_id, forward) <= 0:
                    continue
                w = self._other_end(arc_id, forward)
                if w in parent:
                    continue
                parent[w] = (arc_id, forward)
                queue.append(w)
        if t not in parent:
            return None
        path: List[Tuple[ArcId, bool]] = []
        v = t
        while parent[v] is not None:
            arc_id, forward = parent[v]
            path.append((arc_id, forward))
            arc = self.network.digraph.arc(arc_id)
            v = arc.tail if forward else arc.head
        path.reverse()
        return path

    def augment(self, s: VertexId, t: VertexId, limit: Optional[int] = None) -> int:
        """Augments along shortest paths until none is left or `limit` extra units were pushed."""
        pushed = 0
        while limit is None or pushed < limit:
            path = self.shortest_augmenting_path(s, t)
            if path is None:
                break
            delta = min(self.residual(a, f) for a, f in path)
            if limit is not None:
                delta = min(delta, limit - pushed)
            for arc_id, forward in path:
                self.flow[arc_id] += delta if forward else -delta
            pushed += delta
        return pushed

    def to_flow(self) -> Flow:
        return Flow(self.network, {a: f for a, f in self.flow.items() if f > 0})


def max_flow(net: Network, limit: Optional[int] = None, initial: Optional[Flow] = None) -> Flow:
    """
    Integer maximum (s,t)-flow by Edmonds-Karp.

    With `limit`, stops once the value reaches it; with `initial`, augments
    from that flow instead of zero.
    """
    residual = ResidualGraph(net, dict(initial.x) if initial is not None else None)
    start = initial.value if initial is not None else 0
    extra = None if limit is None else max(0, limit - start)
    residual.augment(net.source, net.sink, extra)
    flow = residual.to_flow()
    logger.debug(f"max_flow: value {flow.value} on {net.digraph.arc_count} arcs")
    return flow


def residual_reachable(net: Network, flow: Flow) -> Set[VertexId]:
    return ResidualGraph(net, dict(flow.x)).reachable(net.source)


def min_cut(net: Network) -> Cut:
    """The source-side-minimal minimum cut: X is the residual reach of s under a maximum flow."""
    flow = max_flow(net)
    X = frozenset(residual_reachable(net, flow))
    across = tuple(sorted(a.id for a in net.arcs if a.tail in X and a.head not in X))
    capacity = sum(net.cap(a) for a in across)
    if capacity != flow.value:
        raise AlgorithmError(f"max-flow {flow.value} differs from cut capacity {capacity}")
    return Cut(X, across, capacity)


def arc_connectivity(d: Digraph, s: VertexId, t: VertexId) -> int:
    """λ_D(s,t): the number of pairwise arc-disjoint s→t paths."""
    if s == t:
        raise PreconditionError("arc-connectivity needs distinct endpoints")
    return max_flow(Network.unit(d, s, t)).value


@dataclass(frozen=True)
class SplitNetwork:
    """
    Result of vertex splitting. Original arcs keep their ArcIds (now u⁺→v⁻);
    `special_arcs` maps each added v⁻→v⁺ arc to v. v⁻ keeps the index of v.
    """
    network: Network
    special_arcs: Dict[ArcId, VertexId]
    out_copy: Dict[VertexId, VertexId]

    def original_x(self, flow: Flow) -> Dict[ArcId, int]:
        """Flow values on the original arcs (special arcs dropped)."""
        return {a: f for a, f in flow.x.items() if a not in self.special_arcs}


def split_vertices(net: Network, bound: int, exclude: Optional[Iterable[VertexId]] = None) -> SplitNetwork:
    """
    Replaces every vertex v outside `exclude` by v⁻→v⁺ with capacity `bound`.
    `exclude` defaults to {s, t}. The new source is s (s⁻ when split); the new
    sink is t⁺ when t is split.
    """
    if bound < 1:
        raise PreconditionError(f"split bound must be positive, got {bound}")
    excluded = {net.source, net.sink} if exclude is None else set(exclude)
    n = net.vertex_count
    split = [v for v in range(n) if v not in excluded]
    out_copy = {v: n + i for i, v in enumerate(split)}
    arcs: List[Arc] = []
    caps: Dict[ArcId, int] = {}
    for arc in sorted(net.arcs):
        arcs.append(Arc(arc.id, out_copy.get(arc.tail, arc.tail), arc.head))
        caps[arc.id] = net.cap(arc.id)
    next_id = max((a.id for a in net.arcs), default=-1) + 1
    special: Dict[ArcId, VertexId] = {}
    for v in split:
        arcs.append(Arc(next_id, v, out_copy[v]))
        caps[next_id] = bound
        special[next_id] = v
        next_id += 1
    digraph = Digraph(n + len(split), tuple(arcs))
    sink = out_copy.get(net.sink, net.sink)
    return SplitNetwork(Network(digraph, net.source, sink, caps), special, out_copy)


def line_vertex_arcs(net: Network) -> Tuple[ArcId, ...]:
    """Vertex i of line_digraph_network(net) stands for the i-th arc in ArcId order."""
    return tuple(a.id for a in sorted(net.arcs))


def line_digraph_network(net: Network) -> Network:
    """
    Line-digraph network: one vertex per arc plus s′ (= m) and t′ (= m+1).
    c′(s′,a) = c(a), c′(a,t′) = c(a), c′(a,b) = min(c(a), c(b)).
    """
    acyclic, _ = is_acyclic(net.digraph)
    if not acyclic:
        raise PreconditionError("line digraph reduction needs an acyclic network")
    if any(a.tail == net.source and a.head == net.sink for a in net.arcs):
        raise PreconditionError("subdivide s→t arcs before building the line digraph")
    order = line_vertex_arcs(net)
    index = {arc_id: i for i, arc_id in enumerate(order)}
    m = len(order)
    s_line, t_line = m, m + 1
    triples: List[Tuple[VertexId, VertexId, int]] = []
    for arc_id in order:
        arc = net.digraph.arc(arc_id)
        if arc.tail == net.source:
            triples.append((s_line, index[arc_id], net.cap(arc_id)))
    for arc_id in order:
        arc = net.digraph.arc(arc_id)
        for nxt in net.digraph.out_arcs(arc.head):
            triples.append((index[arc_id], index[nxt.id], min(net.cap(arc_id), net.cap(nxt.id))))
        if arc.head == net.sink:
            triples.append((index[arc_id], t_line, net.cap(arc_id)))
    return Network.build(m + 2, triples, s_line, t_line)


def mincut_arcs(net: Network) -> FrozenSet[ArcId]:
    """
    A_mincut. Minimum cuts are the residual-closed sets X with s ∈ X, t ∉ X,
    so uv lies in one iff v ∉ R(s) ∪ R(u) and t ∉ R(u) (R = residual reach).
    """
    flow = max_flow(net)
    residual = ResidualGraph(net, dict(flow.x))
    from_source = residual.reachable(net.source)
    reach_cache: Dict[VertexId, Set[VertexId]] = {}
    result: Set[ArcId] = set()
    for arc in net.arcs:
        if flow[arc.id] < net.cap(arc.id) or arc.head in from_source:
            continue
        if arc.tail not in reach_cache:
            reach_cache[arc.tail] = residual.reachable(arc.tail)
        from_tail = reach_cache[arc.tail]
        if arc.head not in from_tail and net.sink not in from_tail:
            result.add(arc.id)
    return frozenset(result)


def brute_force_min_cuts(net: Network, max_vertices: Optional[int] = None) -> List[Cut]:
    """Every minimum (s,t)-cut, by enumerating vertex subsets; guarded by vertex count."""
    limit = max_vertices if max_vertices is not None else Config.Budget.MAX_VERTICES
    n = net.vertex_count
    if n > limit:
        raise BudgetError("cut enumeration", estimate=n, limit=limit)
    others = [v for v in range(n) if v not in (net.source, net.sink)]
    cuts: List[Cut] = []
    best: Optional[int] = None
    for size in range(len(others) + 1):
        for extra in itertools.combinations(others, size):
            X = frozenset((net.source,) + extra)
            across = tuple(sorted(a.id for a in net.arcs if a.tail in X and a.head not in X))
            capacity = sum(net.cap(a) for a in across)
            if best is None or capacity < best:
                best, cuts = capacity, []
            if capacity == best:
                cuts.append(Cut(X, across, capacity))
    return cuts


def brute_force_mincut_arcs(net: Network) -> FrozenSet[ArcId]:
    return frozenset(a for cut in brute_force_min_cuts(net) for a in cut.arcs_across)
