"""
Maximum flows whose support stays 2-arc-strong between s and t.

Starting from an acyclic maximum flow, every step reroutes one unit: +1 along
a path P of D that leaves the first block X_0 through arcs outside the
support, and −1 along a support path Q joining the same endpoints. Each step
removes at least one (s,t)-cut-arc of the support.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .decomp import acyclify, decompose
from .errors import AlgorithmError, PreconditionError
from .maxflow import arc_connectivity, max_flow
from .netcore import Arc, ArcId, Digraph, Flow, Network, VertexId, support

logger = logging.getLogger(__name__)


def st_cut_arcs(d: Digraph, s: VertexId, t: VertexId) -> List[ArcId]:
    """Arcs lying on every s→t path, in the order they appear along one such path."""
    path = d.find_path(s, t)
    if path is None:
        raise PreconditionError(f"vertex {t + 1} is not reachable from {s + 1}")
    return [a.id for a in path if t not in d.reachable(s, blocked_arcs=[a.id])]


@dataclass(frozen=True)
class CutArcChain:
    """
    Cut-arcs u_1v_1..u_lv_l of an acyclic support, and blocks X_0..X_l where
    X_i is what v_i reaches without cut-arcs (v_0 = s).
    """
    cut_arcs: Tuple[ArcId, ...]
    blocks: Tuple[FrozenSet[VertexId], ...]
    entries: Tuple[VertexId, ...]
    exits: Tuple[VertexId, ...]

    def block_of(self) -> Dict[VertexId, int]:
        return {v: i for i, block in enumerate(self.blocks) for v in block}

    def to_dict(self) -> Dict[str, list]:
        return {
            "cut_arcs": list(self.cut_arcs),
            "blocks": [sorted(v + 1 for v in block) for block in self.blocks],
        }


def cut_arc_chain(flow: Flow) -> CutArcChain:
    net = flow.network
    d_x = support(flow)
    cuts = st_cut_arcs(d_x, net.source, net.sink)
    cut_arcs = [d_x.arc(a) for a in cuts]
    entries = [net.source] + [a.head for a in cut_arcs]
    exits = [a.tail for a in cut_arcs] + [net.sink]
    blocks = tuple(frozenset(d_x.reachable(v, blocked_arcs=cuts)) for v in entries)
    return CutArcChain(tuple(cuts), blocks, tuple(entries), tuple(exits))


def _two_disjoint_paths(d_x: Digraph, block: FrozenSet[VertexId], a: VertexId, b: VertexId) -> List[List[Arc]]:
    """Two arc-disjoint a→b paths inside the block (two empty paths when a = b)."""
    if a == b:
        return [[], []]
    inner = d_x.subdigraph(arc.id for arc in d_x.arcs if arc.tail in block and arc.head in block)
    flow = max_flow(Network.unit(inner, a, b), limit=2)
    if flow.value < 2:
        raise AlgorithmError(f"block {a + 1}->{b + 1} is not 2-arc-connected in the support")
    return [[inner.arc(i) for i in comp.arcs] for comp in decompose(flow).paths]


def _path_vertices(path: List[Arc], start: VertexId) -> List[VertexId]:
    return [start] + [a.head for a in path]


def _segment(path: List[Arc], start: VertexId, begin: Optional[VertexId] = None, end: Optional[VertexId] = None) -> List[Arc]:
    """The part of `path` (which starts at `start`) between vertices begin and end."""
    vertices = _path_vertices(path, start)
    lo = vertices.index(begin) if begin is not None else 0
    hi = vertices.index(end) if end is not None else len(path)
    return path[lo:hi]


def _escape_paths(
    d: Digraph,
    support_arcs: Set[ArcId],
    starts: Iterable[VertexId],
    first_block: FrozenSet[VertexId],
    in_support: Set[VertexId],
    targets: Optional[Set[VertexId]] = None,
) -> Dict[VertexId, List[Arc]]:
    """
    BFS over arcs outside the support from `starts`, never re-entering the
    first block and never passing through support vertices. Returns, for each
    support vertex reached first (restricted to `targets` when given), the
    path reaching it.
    """
    parent: Dict[VertexId, Optional[Arc]] = {}
    queue = deque()
    for v in sorted(starts):
        parent[v] = None
        queue.append(v)
    found: Dict[VertexId, List[Arc]] = {}
    while queue:
        v = queue.popleft()
        for arc in d.out_arcs(v):
            h = arc.head
            if arc.id in support_arcs or h in first_block or h in parent or h in found:
                continue
            if h in in_support:
                if targets is not None and h not in targets:
                    continue
                path = [arc]
                w = v
                while parent[w] is not None:
                    path.append(parent[w])
                    w = parent[w].tail
                path.reverse()
                found[h] = path
                continue
            parent[h] = arc
            queue.append(h)
    return found


def _lightest_support_path(flow: Flow, d_x: Digraph, u: VertexId, v: VertexId) -> Optional[List[Arc]]:
    """0-1 BFS in the support: a u→v path using as few arcs carrying exactly 1 as possible."""
    dist: Dict[VertexId, int] = {u: 0}
    parent: Dict[VertexId, Optional[Arc]] = {u: None}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        for arc in d_x.out_arcs(w):
            weight = 1 if flow[arc.id] == 1 else 0
            nd = dist[w] + weight
            if nd < dist.get(arc.head, nd + 1):
                dist[arc.head] = nd
                parent[arc.head] = arc
                if weight:
                    queue.append(arc.head)
                else:
                    queue.appendleft(arc.head)
    if v not in parent:
        return None
    path: List[Arc] = []
    w = v
    while parent[w] is not None:
        path.append(parent[w])
        w = parent[w].tail
    path.reverse()
    return path


def _reroute(flow: Flow, plus: List[Arc], minus: List[Arc]) -> Flow:
    x = dict(flow.x)
    for arc in plus:
        x[arc.id] = x.get(arc.id, 0) + 1
    for arc in minus:
        x[arc.id] -= 1
    return acyclify(Flow(flow.network, x))


def _cut_count(flow: Flow) -> int:
    net = flow.network
    return len(st_cut_arcs(support(flow), net.source, net.sink))


def _primary_step(flow: Flow, chain: CutArcChain) -> Optional[Flow]:
    net = flow.network
    d_x = support(flow)
    paths = [
        _two_disjoint_paths(d_x, chain.blocks[i], chain.entries[i], chain.exits[i])
        for i in range(len(chain.blocks))
    ]
    on_paths: List[Set[VertexId]] = [
        set(_path_vertices(q[0], chain.entries[i])) | set(_path_vertices(q[1], chain.entries[i]))
        for i, q in enumerate(paths)
    ]
    in_support = set().union(*chain.blocks)
    targets = set().union(*on_paths[1:])
    found = _escape_paths(net.digraph, set(d_x.arc_ids), on_paths[0], chain.blocks[0], in_support, targets)
    if not found:
        return None
    block_of = chain.block_of()
    end = min(found, key=lambda v: (len(found[v]), v))
    P = found[end]
    y1, j = P[0].tail, block_of[end]

    def pick(i: int, vertex: VertexId) -> List[Arc]:
        first, second = paths[i]
        return first if vertex in _path_vertices(first, chain.entries[i]) else second

    Q = _segment(pick(0, y1), chain.entries[0], begin=y1)
    for i in range(1, j + 1):
        Q.append(d_x.arc(chain.cut_arcs[i - 1]))
        if i < j:
            Q.extend(paths[i][0])
    Q.extend(_segment(pick(j, end), chain.entries[j], end=end))
    logger.debug(f"reroute: P from {y1 + 1} to {end + 1} (block {j}), |Q| = {len(Q)}")
    return _reroute(flow, P, Q)


def _fallback_step(flow: Flow, chain: CutArcChain, current: int) -> Optional[Flow]:
    net = flow.network
    d_x = support(flow)
    in_support = set().union(*chain.blocks)
    for y1 in sorted(chain.blocks[0]):
        found = _escape_paths(net.digraph, set(d_x.arc_ids), [y1], chain.blocks[0], in_support)
        for end in sorted(found):
            Q = _lightest_support_path(flow, d_x, y1, end)
            if Q is None:
                continue
            candidate = _reroute(flow, found[end], Q)
            if candidate.value == flow.value and _cut_count(candidate) < current:
                return candidate
    return None


def two_arc_strong_max_flow(net: Network, history: Optional[List[int]] = None) -> Flow:
    """
    A maximum flow x with λ_{D_x}(s,t) ≥ 2. Requires λ_D(s,t) ≥ 2.
    When `history` is given, the cut-arc count after every rerouting is appended.
    """
    if arc_connectivity(net.digraph, net.source, net.sink) < 2:
        raise PreconditionError("the network needs two arc-disjoint s→t paths")
    flow = acyclify(max_flow(net))
    current = _cut_count(flow)
    logger.info(f"strong2: max flow {flow.value}, {current} cut-arcs in its support")
    for _ in range(net.digraph.arc_count + 1):
        if current == 0:
            return flow
        chain = cut_arc_chain(flow)
        candidate = _primary_step(flow, chain)
        if candidate is None or _cut_count(candidate) >= current:
            logger.warning(f"strong2: primary rerouting did not reduce {current} cut-arcs, searching all candidates")
            candidate = _fallback_step(flow, chain, current)
        if candidate is None:
            raise AlgorithmError(f"no rerouting reduces the {current} cut-arcs of the support")
        flow = candidate
        current = _cut_count(flow)
        if history is not None:
            history.append(current)
        logger.info(f"strong2: rerouted one unit, {current} cut-arcs left")
    raise AlgorithmError("cut-arc count did not reach zero within |A| reroutings")
