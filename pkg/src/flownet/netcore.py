"""
Core data model: directed multigraphs, capacitated networks, integer flows,
and the line-oriented network file format shared by every other module.

Vertices are dense integers internally and 1-based in files. An arc's identity
is its ArcId, never its (tail, head) pair, so parallel arcs are first-class.
"""

import heapq
import io
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Set, TextIO, Tuple, Union

from .config import Config
from .errors import FlowValidationError, InputError

logger = logging.getLogger(__name__)

VertexId = int
ArcId = int


class Arc(NamedTuple):
    id: ArcId
    tail: VertexId
    head: VertexId


@dataclass(frozen=True)
class Digraph:
    """
    Directed multigraph on vertices 0..vertex_count-1.

    A full digraph has ArcIds 0..m-1 in list order; a subdigraph (e.g. the
    support of a flow) keeps the ArcIds of its parent.
    """
    vertex_count: int
    arcs: Tuple[Arc, ...]
    _out: Tuple[Tuple[Arc, ...], ...] = field(init=False, repr=False, compare=False)
    _in: Tuple[Tuple[Arc, ...], ...] = field(init=False, repr=False, compare=False)
    _by_id: Dict[ArcId, Arc] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InputError(f"negative vertex count {self.vertex_count}")
        arcs = tuple(a if isinstance(a, Arc) else Arc(*a) for a in self.arcs)
        by_id: Dict[ArcId, Arc] = {}
        out_lists: List[List[Arc]] = [[] for _ in range(self.vertex_count)]
        in_lists: List[List[Arc]] = [[] for _ in range(self.vertex_count)]
        for arc in arcs:
            if arc.id in by_id:
                raise InputError(f"duplicate arc id {arc.id}")
            for end in (arc.tail, arc.head):
                if not 0 <= end < self.vertex_count:
                    raise InputError(f"arc {arc.id} endpoint {end} outside 0..{self.vertex_count - 1}")
            if arc.tail == arc.head:
                raise InputError(f"self-loop on vertex {arc.tail + 1} (arc {arc.id})")
            by_id[arc.id] = arc
            out_lists[arc.tail].append(arc)
            in_lists[arc.head].append(arc)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_out", tuple(tuple(sorted(lst)) for lst in out_lists))
        object.__setattr__(self, "_in", tuple(tuple(sorted(lst)) for lst in in_lists))

    @classmethod
    def from_pairs(cls, vertex_count: int, pairs: Iterable[Tuple[VertexId, VertexId]]) -> "Digraph":
        return cls(vertex_count, tuple(Arc(i, u, v) for i, (u, v) in enumerate(pairs)))

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @property
    def arc_ids(self) -> Tuple[ArcId, ...]:
        return tuple(a.id for a in self.arcs)

    def arc(self, arc_id: ArcId) -> Arc:
        return self._by_id[arc_id]

    def has_arc(self, arc_id: ArcId) -> bool:
        return arc_id in self._by_id

    def out_arcs(self, v: VertexId) -> Tuple[Arc, ...]:
        return self._out[v]

    def in_arcs(self, v: VertexId) -> Tuple[Arc, ...]:
        return self._in[v]

    def out_degree(self, v: VertexId) -> int:
        return len(self._out[v])

    def in_degree(self, v: VertexId) -> int:
        return len(self._in[v])

    def max_out_degree(self) -> int:
        """Δ⁺(D); 0 for an arcless digraph."""
        return max((len(lst) for lst in self._out), default=0)

    def max_in_degree(self) -> int:
        return max((len(lst) for lst in self._in), default=0)

    def out_neighbours(self, v: VertexId) -> List[VertexId]:
        return sorted({a.head for a in self._out[v]})

    def in_neighbours(self, v: VertexId) -> List[VertexId]:
        return sorted({a.tail for a in self._in[v]})

    def incident_vertices(self) -> Set[VertexId]:
        return {a.tail for a in self.arcs} | {a.head for a in self.arcs}

    def subdigraph(self, arc_ids: Iterable[ArcId]) -> "Digraph":
        keep = set(arc_ids)
        return Digraph(self.vertex_count, tuple(a for a in self.arcs if a.id in keep))

    def reachable(
        self,
        start: Union[VertexId, Iterable[VertexId]],
        reverse: bool = False,
        blocked_vertices: Iterable[VertexId] = (),
        blocked_arcs: Iterable[ArcId] = (),
        stop_at: Iterable[VertexId] = (),
    ) -> Set[VertexId]:
        """
        Vertices reachable from `start` by BFS.

        blocked_vertices are never entered, blocked_arcs never used, and
        vertices in stop_at are reached but not expanded.
        """
        starts = [start] if isinstance(start, int) else list(start)
        blocked_v = set(blocked_vertices)
        blocked_a = set(blocked_arcs)
        stops = set(stop_at)
        seen: Set[VertexId] = set()
        queue = deque()
        for v in starts:
            if v not in blocked_v and v not in seen:
                seen.add(v)
                queue.append(v)
        while queue:
            v = queue.popleft()
            if v in stops:
                continue
            arcs = self._in[v] if reverse else self._out[v]
            for arc in arcs:
                if arc.id in blocked_a:
                    continue
                w = arc.tail if reverse else arc.head
                if w in blocked_v or w in seen:
                    continue
                seen.add(w)
                queue.append(w)
        return seen

    def has_path(self, u: VertexId, v: VertexId, **kwargs) -> bool:
        return v in self.reachable(u, **kwargs)

    def find_path(self, u: VertexId, v: VertexId, blocked_arcs: Iterable[ArcId] = ()) -> Optional[List[Arc]]:
        """Shortest u→v path as a list of arcs, preferring smaller ArcIds; None when v is unreachable."""
        blocked = set(blocked_arcs)
        parent: Dict[VertexId, Optional[Arc]] = {u: None}
        queue = deque([u])
        while queue and v not in parent:
            w = queue.popleft()
            for arc in self._out[w]:
                if arc.id in blocked or arc.head in parent:
                    continue
                parent[arc.head] = arc
                queue.append(arc.head)
        if v not in parent:
            return None
        path: List[Arc] = []
        w = v
        while parent[w] is not None:
            arc = parent[w]
            path.append(arc)
            w = arc.tail
        path.reverse()
        return path


@dataclass(frozen=True)
class Network:
    """A flow network (D, s, t, c) with positive integer capacities keyed by ArcId."""
    digraph: Digraph
    source: VertexId
    sink: VertexId
    capacity: Mapping[ArcId, int]

    def __post_init__(self):
        n = self.digraph.vertex_count
        if not (0 <= self.source < n and 0 <= self.sink < n):
            raise InputError(f"source/sink outside 1..{n}")
        if self.source == self.sink:
            raise InputError("source and sink coincide")
        caps = dict(self.capacity)
        if set(caps) != set(self.digraph.arc_ids):
            raise InputError("capacity map does not match the arc set")
        for arc_id, cap in caps.items():
            if not isinstance(cap, int) or cap < 1:
                raise InputError(f"arc {arc_id} has capacity {cap!r}; capacities must be integers >= 1")
            if cap > Config.MAX_CAPACITY:
                raise InputError(f"arc {arc_id} capacity {cap} exceeds {Config.MAX_CAPACITY}")
        object.__setattr__(self, "capacity", caps)

    @classmethod
    def build(
        cls,
        vertex_count: int,
        arcs: Iterable[Tuple[VertexId, VertexId, int]],
        source: VertexId,
        sink: VertexId,
        prune: bool = False,
    ) -> "Network":
        """Builds a network from (tail, head, capacity) triples; ArcIds follow the input order."""
        triples = list(arcs)
        digraph = Digraph.from_pairs(vertex_count, ((u, v) for u, v, _ in triples))
        net = cls(digraph, source, sink, {i: c for i, (_, _, c) in enumerate(triples)})
        return prune_to_st_paths(net) if prune else net

    @classmethod
    def unit(cls, digraph: Digraph, source: VertexId, sink: VertexId) -> "Network":
        return cls(digraph, source, sink, {a.id: 1 for a in digraph.arcs})

    @property
    def vertex_count(self) -> int:
        return self.digraph.vertex_count

    @property
    def arcs(self) -> Tuple[Arc, ...]:
        return self.digraph.arcs

    def cap(self, arc_id: ArcId) -> int:
        return self.capacity[arc_id]

    @property
    def max_capacity(self) -> int:
        return max(self.capacity.values(), default=0)

    def triples(self) -> List[Tuple[VertexId, VertexId, int]]:
        return [(a.tail, a.head, self.capacity[a.id]) for a in self.arcs]

    def restrict(self, arc_ids: Iterable[ArcId]) -> "Network":
        """Sub-network on the given arcs; ArcIds and capacities are inherited."""
        sub = self.digraph.subdigraph(arc_ids)
        return Network(sub, self.source, self.sink, {a.id: self.capacity[a.id] for a in sub.arcs})

    def with_capacity(self, capacity: Mapping[ArcId, int]) -> "Network":
        return Network(self.digraph, self.source, self.sink, capacity)

    def is_unit(self) -> bool:
        return all(c == 1 for c in self.capacity.values())


@dataclass(frozen=True)
class Flow:
    """
    Integer (s,t)-flow. Construction validates capacity bounds and
    conservation; arcs missing from `x` carry zero.
    """
    network: Network
    x: Mapping[ArcId, int]
    value: int = field(init=False)

    def __post_init__(self):
        net = self.network
        clean: Dict[ArcId, int] = {}
        balance = [0] * net.vertex_count
        for arc_id, amount in self.x.items():
            if not net.digraph.has_arc(arc_id):
                raise FlowValidationError(f"flow on unknown arc {arc_id}")
            if not isinstance(amount, int) or amount < 0:
                raise FlowValidationError(f"arc {arc_id} carries {amount!r}; flows are non-negative integers")
            if amount > net.cap(arc_id):
                raise FlowValidationError(f"arc {arc_id} carries {amount} > capacity {net.cap(arc_id)}")
            if amount == 0:
                continue
            clean[arc_id] = amount
            arc = net.digraph.arc(arc_id)
            balance[arc.tail] -= amount
            balance[arc.head] += amount
        for v, b in enumerate(balance):
            if v not in (net.source, net.sink) and b != 0:
                raise FlowValidationError(f"conservation violated at vertex {v + 1} (excess {b})")
        value = -balance[net.source]
        if value != balance[net.sink]:
            raise FlowValidationError("source outflow and sink inflow disagree")
        if abs(value) > Config.MAX_CAPACITY:
            raise FlowValidationError(f"flow value {value} exceeds {Config.MAX_CAPACITY}")
        object.__setattr__(self, "x", clean)
        object.__setattr__(self, "value", value)

    @classmethod
    def zero(cls, network: Network) -> "Flow":
        return cls(network, {})

    def __getitem__(self, arc_id: ArcId) -> int:
        return self.x.get(arc_id, 0)

    def vector(self) -> Tuple[int, ...]:
        """Arc values in ArcId order; used for lexicographic tie-breaking."""
        return tuple(self.x.get(a.id, 0) for a in self.network.arcs)

    def outflow(self, v: VertexId) -> int:
        return sum(self[a.id] for a in self.network.digraph.out_arcs(v))

    def to_dict(self) -> Dict[str, Any]:
        return flow_to_dict(self)


def validate_flow(network: Network, x: Mapping[ArcId, int]) -> Flow:
    """Returns a validated Flow or raises FlowValidationError."""
    return Flow(network, dict(x))


def support(flow: Flow) -> Digraph:
    """D_x: same vertex set, only the arcs with positive flow, original ArcIds kept."""
    return flow.network.digraph.subdigraph(a for a, amount in flow.x.items() if amount > 0)


def is_acyclic(d: Digraph) -> Tuple[bool, Optional[List[VertexId]]]:
    """Kahn's algorithm; on success also returns the topological order (smallest vertex first on ties)."""
    indeg = [d.in_degree(v) for v in range(d.vertex_count)]
    ready = [v for v in range(d.vertex_count) if indeg[v] == 0]
    heapq.heapify(ready)
    order: List[VertexId] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for arc in d.out_arcs(v):
            indeg[arc.head] -= 1
            if indeg[arc.head] == 0:
                heapq.heappush(ready, arc.head)
    if len(order) != d.vertex_count:
        return False, None
    return True, order


def prune_to_st_paths(net: Network) -> Network:
    """
    Keeps only arcs uv with u forward-reachable from s and v backward-reachable
    from t. Arcs entering s or leaving t lie on no simple (s,t)-path and are
    dropped too. Vertices are not renumbered; pruned ones become isolated.
    """
    d = net.digraph
    s, t = net.source, net.sink
    forward = d.reachable(s, stop_at=[t])
    backward = d.reachable(t, reverse=True, stop_at=[s])
    keep = [a.id for a in d.arcs if a.tail in forward and a.head in backward and a.head != s and a.tail != t]
    if len(keep) < d.arc_count:
        logger.debug(f"Pruned {d.arc_count - len(keep)} arcs on no (s,t)-path")
    return net.restrict(keep)


# === Network file format ===

def parse_network(text: Union[str, TextIO]) -> Network:
    """
    Parses the line-oriented format:
        p flownet <n> <m>   (first non-comment line)
        s <v> / t <v>       (once each)
        a <tail> <head> <cap>  (m times; file order defines ArcIds)
    '#' starts a comment. Vertices are 1-based.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    header: Optional[Tuple[int, int]] = None
    source: Optional[int] = None
    sink: Optional[int] = None
    arcs: List[Tuple[int, int, int]] = []

    def as_int(token: str, lineno: int) -> int:
        try:
            return int(token)
        except ValueError:
            raise InputError(f"expected an integer, got {token!r}", lineno) from None

    def vertex(token: str, lineno: int) -> int:
        v = as_int(token, lineno)
        if not 1 <= v <= header[0]:
            raise InputError(f"vertex {v} out of range 1..{header[0]}", lineno)
        return v - 1

    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if header is None:
            if kind != "p" or len(tokens) != 4 or tokens[1] != "flownet":
                raise InputError("first line must be 'p flownet <n> <m>'", lineno)
            n, m = as_int(tokens[2], lineno), as_int(tokens[3], lineno)
            if n < 2 or m < 0:
                raise InputError(f"bad problem size n={n} m={m}", lineno)
            header = (n, m)
            continue
        if kind == "p":
            raise InputError("duplicate 'p' line", lineno)
        if kind in ("s", "t"):
            if len(tokens) != 2:
                raise InputError(f"'{kind}' line needs exactly one vertex", lineno)
            v = vertex(tokens[1], lineno)
            if kind == "s":
                if source is not None:
                    raise InputError("duplicate 's' line", lineno)
                source = v
            else:
                if sink is not None:
                    raise InputError("duplicate 't' line", lineno)
                sink = v
        elif kind == "a":
            if len(tokens) != 4:
                raise InputError("'a' line needs tail, head and capacity", lineno)
            u, v = vertex(tokens[1], lineno), vertex(tokens[2], lineno)
            cap = as_int(tokens[3], lineno)
            if u == v:
                raise InputError(f"self-loop on vertex {u + 1}", lineno)
            if cap < 1:
                raise InputError(f"capacity {cap} < 1", lineno)
            if cap > Config.MAX_CAPACITY:
                raise InputError(f"capacity {cap} exceeds {Config.MAX_CAPACITY}", lineno)
            if len(arcs) == header[1]:
                raise InputError(f"more than the declared {header[1]} arcs", lineno)
            arcs.append((u, v, cap))
        else:
            raise InputError(f"unknown line type {kind!r}", lineno)

    if header is None:
        raise InputError("missing 'p flownet <n> <m>' line")
    if source is None or sink is None:
        raise InputError("missing 's' or 't' line")
    if source == sink:
        raise InputError("source and sink coincide")
    if len(arcs) != header[1]:
        raise InputError(f"declared {header[1]} arcs, found {len(arcs)}")
    return Network.build(header[0], arcs, source, sink)


def format_network(net: Network, comments: Sequence[str] = ()) -> str:
    """Serializes a network; arcs are written in ArcId order, so sparse ids become dense on re-parse."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"p flownet {net.vertex_count} {net.digraph.arc_count}")
    lines.append(f"s {net.source + 1}")
    lines.append(f"t {net.sink + 1}")
    for arc in sorted(net.arcs):
        lines.append(f"a {arc.tail + 1} {arc.head + 1} {net.cap(arc.id)}")
    return "\n".join(lines) + "\n"


# === JSON flow schema ===

def flow_to_dict(flow: Flow, decomposition: Optional[Any] = None) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "value": flow.value,
        "flow": [{"arc": a, "x": flow.x[a]} for a in sorted(flow.x) if flow.x[a] > 0],
    }
    if decomposition is not None:
        data["decomposition"] = [c.to_dict() for c in decomposition.components]
    return data


def flow_from_dict(net: Network, data: Mapping[str, Any]) -> Flow:
    """Rebuilds a Flow from the JSON schema, checking the declared value."""
    try:
        x = {int(entry["arc"]): int(entry["x"]) for entry in data["flow"]}
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed flow JSON: {e}") from None
    flow = validate_flow(net, x)
    if "value" in data and int(data["value"]) != flow.value:
        raise FlowValidationError(f"declared value {data['value']} but arcs carry {flow.value}")
    return flow


def to_dot(d: Digraph, labels: Optional[Mapping[str, VertexId]] = None, flow: Optional[Flow] = None) -> str:
    names = {v: str(v + 1) for v in range(d.vertex_count)}
    for label, v in (labels or {}).items():
        names[v] = label
    lines = ["digraph flownet {"]
    for v in range(d.vertex_count):
        lines.append(f'  {v} [label="{names[v]}"];')
    for arc in d.arcs:
        extra = f' [label="{flow[arc.id]}"]' if flow is not None else ""
        lines.append(f"  {arc.tail} -> {arc.head}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"
