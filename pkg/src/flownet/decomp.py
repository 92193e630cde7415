"""
Flow decomposition into path-flows and cycle-flows, and cycle cancelling
to an acyclic support.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

from .errors import AlgorithmError, PreconditionError
from .netcore import Arc, ArcId, Flow, Network, VertexId

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Component:
    """A path-flow (s→t) or cycle-flow; `arcs` disambiguates parallel arcs."""
    kind: str
    vertices: Tuple[VertexId, ...]
    arcs: Tuple[ArcId, ...]
    value: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "vertices": [v + 1 for v in self.vertices],
            "arcs": list(self.arcs),
            "value": self.value,
        }


@dataclass(frozen=True)
class FlowDecomposition:
    parent: Flow
    components: Tuple[Component, ...] = field(default_factory=tuple)

    @property
    def paths(self) -> List[Component]:
        return [c for c in self.components if c.kind == "path"]

    @property
    def cycles(self) -> List[Component]:
        return [c for c in self.components if c.kind == "cycle"]

    def arc_sum(self) -> Dict[ArcId, int]:
        return reconstruct(self.components)

    def to_dict(self) -> Dict[str, Any]:
        return {"components": [c.to_dict() for c in self.components]}


def reconstruct(components) -> Dict[ArcId, int]:
    """Arc-wise sum of component values."""
    total: Dict[ArcId, int] = {}
    for comp in components:
        for arc_id in comp.arcs:
            total[arc_id] = total.get(arc_id, 0) + comp.value
    return total


def _component(network: Network, kind: str, arcs: List[Arc], value: int) -> Component:
    vertices = [arcs[0].tail] + [a.head for a in arcs]
    if kind == "cycle":
        vertices = vertices[:-1]
    return Component(kind, tuple(vertices), tuple(a.id for a in arcs), value)


def _dfs_path(network: Network, remaining: Mapping[ArcId, int]) -> Optional[List[Arc]]:
    """First s→t path in the positive part of `remaining`, exploring arcs by increasing ArcId."""
    d = network.digraph
    s, t = network.source, network.sink
    visited = {s}
    stack: List[Tuple[VertexId, int]] = [(s, 0)]
    path: List[Arc] = []
    while stack:
        v, i = stack[-1]
        if v == t:
            return path
        out = d.out_arcs(v)
        while i < len(out) and (remaining.get(out[i].id, 0) <= 0 or out[i].head in visited):
            i += 1
        if i == len(out):
            stack.pop()
            if path:
                path.pop()
            continue
        stack[-1] = (v, i + 1)
        arc = out[i]
        visited.add(arc.head)
        path.append(arc)
        stack.append((arc.head, 0))
    return None


def _walk_cycle(network: Network, remaining: Mapping[ArcId, int], start: Arc) -> List[Arc]:
    """Follows positive arcs from `start` until a vertex repeats; valid on a circulation."""
    d = network.digraph
    position: Dict[VertexId, int] = {start.tail: 0}
    walk: List[Arc] = [start]
    v = start.head
    while v not in position:
        position[v] = len(walk)
        nxt = next((a for a in d.out_arcs(v) if remaining.get(a.id, 0) > 0), None)
        if nxt is None:
            raise AlgorithmError(f"conservation broken at vertex {v + 1} while extracting cycles")
        walk.append(nxt)
        v = nxt.head
    return walk[position[v]:]


def decompose(x: Flow) -> FlowDecomposition:
    """
    Greedy bottleneck extraction: s→t paths first, then cycles of the
    remaining circulation. At most |A| components, each zeroing an arc.
    """
    if x.value < 0:
        raise PreconditionError("cannot decompose a flow of negative value")
    network = x.network
    remaining: Dict[ArcId, int] = dict(x.x)
    components: List[Component] = []

    def subtract(arcs: List[Arc], cap: Optional[int] = None) -> int:
        amount = min(remaining[a.id] for a in arcs)
        if cap is not None:
            amount = min(amount, cap)
        for a in arcs:
            remaining[a.id] -= amount
            if remaining[a.id] == 0:
                del remaining[a.id]
        return amount

    left = x.value
    while left > 0:
        arcs = _dfs_path(network, remaining)
        if arcs is None:
            raise AlgorithmError("no s→t path left although flow value remains")
        amount = subtract(arcs, left)
        components.append(_component(network, "path", arcs, amount))
        left -= amount

    while remaining:
        first = network.digraph.arc(min(remaining))
        cycle = _walk_cycle(network, remaining, first)
        amount = subtract(cycle)
        components.append(_component(network, "cycle", cycle, amount))

    logger.debug(f"decompose: {len(components)} components for value {x.value}")
    return FlowDecomposition(x, tuple(components))


def _find_cycle(network: Network, flow: Mapping[ArcId, int]) -> Optional[List[Arc]]:
    """A directed cycle of positive-flow arcs, or None."""
    d = network.digraph
    colour: Dict[VertexId, int] = {}
    for root in range(d.vertex_count):
        if root in colour:
            continue
        colour[root] = 1
        stack: List[Tuple[VertexId, int]] = [(root, 0)]
        trail: List[Arc] = []
        while stack:
            v, i = stack[-1]
            out = d.out_arcs(v)
            while i < len(out) and (flow.get(out[i].id, 0) <= 0 or colour.get(out[i].head) == 2):
                i += 1
            if i == len(out):
                colour[v] = 2
                stack.pop()
                if trail:
                    trail.pop()
                continue
            stack[-1] = (v, i + 1)
            arc = out[i]
            if colour.get(arc.head) == 1:
                # back arc: the cycle is the trail suffix starting at arc.head
                start = next(k for k, a in enumerate(trail) if a.tail == arc.head)
                return trail[start:] + [arc]
            colour[arc.head] = 1
            trail.append(arc)
            stack.append((arc.head, 0))
    return None


def acyclify(x: Flow) -> Flow:
    """
    Cancels cycles until the support is acyclic: on each found cycle C,
    subtract the smallest flow value of C from every arc of C.
    """
    flow: Dict[ArcId, int] = dict(x.x)
    cancelled = 0
    while True:
        cycle = _find_cycle(x.network, flow)
        if cycle is None:
            break
        amount = min(flow[a.id] for a in cycle)
        for a in cycle:
            flow[a.id] -= amount
            if flow[a.id] == 0:
                del flow[a.id]
        cancelled += 1
    if cancelled:
        logger.debug(f"acyclify: cancelled {cancelled} cycles")
        return Flow(x.network, flow)
    return x


def trim_to_value(x: Flow, value: int) -> Flow:
    """
    A flow of exactly `value` (≤ |x|) whose support is contained in x's:
    path components are kept in decomposition order until the target is met.
    """
    if value > x.value:
        raise PreconditionError(f"cannot trim a flow of value {x.value} up to {value}")
    kept: Dict[ArcId, int] = {}
    left = value
    for comp in decompose(x).paths:
        if left == 0:
            break
        amount = min(comp.value, left)
        for arc_id in comp.arcs:
            kept[arc_id] = kept.get(arc_id, 0) + amount
        left -= amount
    return Flow(x.network, kept)
