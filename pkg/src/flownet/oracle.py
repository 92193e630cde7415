"""
Exhaustive solvers used as ground truth for the fast algorithms and the
gadget equivalences. Everything here is exponential; each search counts its
states and raises BudgetError instead of running away.
"""

import itertools
import logging
from collections import Counter
from dataclasses import asdict, dataclass
from math import prod
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from .config import Config, state_budget
from .errors import BudgetError, PreconditionError
from .gadgets import CnfFormula
from .maxflow import max_flow
from .netcore import Arc, ArcId, Flow, Network, VertexId, prune_to_st_paths
from .psplit import SplitVariant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Budget:
    max_arcs: int
    max_vertices: int
    max_cap: int
    max_states: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def check_size(self, net: Network, what: str) -> None:
        if net.digraph.arc_count > self.max_arcs:
            raise BudgetError(f"{what}: too many arcs", estimate=net.digraph.arc_count, limit=self.max_arcs)
        if net.vertex_count > self.max_vertices:
            raise BudgetError(f"{what}: too many vertices", estimate=net.vertex_count, limit=self.max_vertices)
        if net.max_capacity > self.max_cap:
            raise BudgetError(f"{what}: capacities too large", estimate=net.max_capacity, limit=self.max_cap)


def default_budget() -> Budget:
    return Budget(
        max_arcs=Config.Budget.MAX_ARCS,
        max_vertices=Config.Budget.MAX_VERTICES,
        max_cap=Config.Budget.MAX_CAP,
        max_states=state_budget(),
    )


def gadget_budget() -> Budget:
    """Default state budget with the size limits opened up for reduction gadgets."""
    return Budget(
        max_arcs=Config.Budget.GADGET_MAX_ARCS,
        max_vertices=Config.Budget.GADGET_MAX_VERTICES,
        max_cap=Config.Budget.GADGET_MAX_CAP,
        max_states=state_budget(),
    )


class _Counter:
    def __init__(self, budget: Budget, what: str):
        self.limit = budget.max_states
        self.what = what
        self.states = 0

    def tick(self) -> None:
        self.states += 1
        if self.states > self.limit:
            raise BudgetError(f"{self.what}: state budget exhausted", estimate=self.states, limit=self.limit)


# === Degree-constrained flows ===

def oracle_deg_max_flow(net: Network, k_out: int, k_in: Optional[int] = None, budget: Optional[Budget] = None) -> int:
    """
    Maximum value of a flow whose support has out-degree ≤ k_out (and
    in-degree ≤ k_in when given). Only vertices above a bound branch: each
    keeps one subset of exactly that many of its arcs.
    """
    budget = budget or default_budget()
    if k_out < 1 or (k_in is not None and k_in < 1):
        raise PreconditionError("degree bounds must be at least 1")
    budget.check_size(net, "degree oracle")
    pruned = prune_to_st_paths(net)
    d = pruned.digraph
    # (side, subsets): side 0 restricts out-arcs of a vertex, side 1 its in-arcs
    groups: List[Tuple[int, List[Tuple[ArcId, ...]]]] = []
    for v in range(d.vertex_count):
        if d.out_degree(v) > k_out:
            groups.append((0, [tuple(a.id for a in c) for c in itertools.combinations(d.out_arcs(v), k_out)]))
        if k_in is not None and d.in_degree(v) > k_in:
            groups.append((1, [tuple(a.id for a in c) for c in itertools.combinations(d.in_arcs(v), k_in)]))
    estimate = prod(len(subsets) for _, subsets in groups)
    if estimate > budget.max_states:
        raise BudgetError("degree oracle", estimate=estimate, limit=budget.max_states)

    ceiling = max_flow(pruned).value
    if not groups:
        return ceiling
    constrained_out = {v for v in range(d.vertex_count) if d.out_degree(v) > k_out}
    constrained_in = {v for v in range(d.vertex_count) if k_in is not None and d.in_degree(v) > k_in}
    sides = [side for side, _ in groups]
    best = 0
    for choice in itertools.product(*(subsets for _, subsets in groups)):
        kept_out = {a for side, subset in zip(sides, choice) if side == 0 for a in subset}
        kept_in = {a for side, subset in zip(sides, choice) if side == 1 for a in subset}
        keep = [
            a.id for a in d.arcs
            if (a.tail not in constrained_out or a.id in kept_out)
            and (a.head not in constrained_in or a.id in kept_in)
        ]
        best = max(best, max_flow(pruned.restrict(keep)).value)
        if best == ceiling:
            break
    logger.debug(f"degree oracle: {estimate} choices, optimum {best}")
    return best


# === Path packings ===

def simple_paths(net: Network, budget: Optional[Budget] = None) -> List[Tuple[Arc, ...]]:
    """Every simple s→t path of the pruned network, as arc tuples (DFS, ArcId order)."""
    budget = budget or default_budget()
    budget.check_size(net, "path enumeration")
    counter = _Counter(budget, "path enumeration")
    pruned = prune_to_st_paths(net)
    d, s, t = pruned.digraph, net.source, net.sink
    paths: List[Tuple[Arc, ...]] = []
    trail: List[Arc] = []
    on_trail = {s}

    def walk(v: VertexId) -> None:
        counter.tick()
        if v == t:
            paths.append(tuple(trail))
            return
        for arc in d.out_arcs(v):
            if arc.head in on_trail:
                continue
            on_trail.add(arc.head)
            trail.append(arc)
            walk(arc.head)
            trail.pop()
            on_trail.discard(arc.head)

    walk(s)
    return paths


def _pack(
    net: Network,
    paths: Sequence[Tuple[Arc, ...]],
    slots: int,
    keys: Callable[[Tuple[Arc, ...]], Iterable[Hashable]],
    limit: Optional[int],
    budget: Budget,
    what: str,
) -> int:
    """
    Best total value of at most `slots` distinct paths with integer values
    fitting the capacities, where each key (vertex or arc) is used by at most
    `limit` chosen paths. With limit 1 paths never share an arc, so each one
    simply takes its bottleneck.
    """
    counter = _Counter(budget, what)
    ceiling = max_flow(net).value
    residual: Dict[ArcId, int] = {a.id: net.cap(a.id) for a in net.arcs}
    usage: Counter = Counter()
    ordered = sorted(paths, key=lambda p: (-min(net.cap(a.id) for a in p), len(p), [a.id for a in p]))
    path_keys = [list(keys(p)) for p in ordered]
    exclusive = limit == 1
    best = 0

    def width(j: int) -> int:
        if limit is not None and any(usage[k] >= limit for k in path_keys[j]):
            return 0
        return min(residual[a.id] for a in ordered[j])

    def residual_bound() -> int:
        live = [a.id for a in net.arcs if residual[a.id] > 0]
        sub = net.digraph.subdigraph(live)
        return max_flow(Network(sub, net.source, net.sink, {a: residual[a] for a in live})).value

    def search(start: int, current: int, left: int) -> None:
        nonlocal best
        counter.tick()
        best = max(best, current)
        if best >= ceiling or left == 0:
            return
        widths = [width(j) for j in range(start, len(ordered))]
        widest = max(widths, default=0)
        if widest == 0 or current + left * widest <= best:
            return
        if current + residual_bound() <= best:
            return
        for offset, w in enumerate(widths):
            if w == 0:
                continue
            j = start + offset
            w = width(j)
            if w == 0:
                continue
            for value in ([w] if exclusive else range(w, 0, -1)):
                for a in ordered[j]:
                    residual[a.id] -= value
                usage.update(path_keys[j])
                search(j + 1, current + value, left - 1)
                usage.subtract(path_keys[j])
                for a in ordered[j]:
                    residual[a.id] += value
                if best >= ceiling:
                    return

    search(0, 0, slots)
    logger.debug(f"{what}: {len(ordered)} paths, {counter.states} states, optimum {best}")
    return best


def _internal_vertices(path: Tuple[Arc, ...]) -> List[VertexId]:
    return [a.head for a in path[:-1]]


def oracle_p_split(net: Network, p: int, variant: SplitVariant = SplitVariant.UNRESTRICTED, budget: Optional[Budget] = None) -> int:
    """Optimum of the p-decomposable problem (or its arc-/vertex-disjoint variant)."""
    if p < 1:
        raise PreconditionError(f"p must be at least 1, got {p}")
    budget = budget or default_budget()
    paths = simple_paths(net, budget)
    if variant is SplitVariant.UNRESTRICTED:
        return _pack(net, paths, p, lambda path: (), None, budget, "p-split oracle")
    if variant is SplitVariant.ARC_DISJOINT:
        return _pack(net, paths, p, lambda path: [a.id for a in path], 1, budget, "arc-disjoint oracle")
    return _pack(net, paths, p, _internal_vertices, 1, budget, "vertex-disjoint oracle")


def oracle_q_separable(net: Network, q: int, mode: str = "vertex", budget: Optional[Budget] = None) -> int:
    """Maximum flow made of path-flows such that each internal vertex (or arc) lies on at most q of them."""
    if q < 1:
        raise PreconditionError(f"q must be at least 1, got {q}")
    if mode not in ("vertex", "arc"):
        raise PreconditionError(f"unknown separability mode {mode!r}")
    budget = budget or default_budget()
    paths = simple_paths(net, budget)
    keys = _internal_vertices if mode == "vertex" else (lambda path: [a.id for a in path])
    return _pack(net, paths, len(paths), keys, q, budget, f"{q}-separable oracle")


def oracle_vertex_disjoint(net: Network, budget: Optional[Budget] = None) -> int:
    """Internally vertex-disjoint path-flows, any number of them."""
    return oracle_q_separable(net, 1, "vertex", budget)


# === Maximum flow enumeration ===

def enumerate_max_flows(net: Network, budget: Optional[Budget] = None) -> Iterator[Flow]:
    """
    Every integer maximum flow exactly once, by branching on arc values in
    BFS order with a balance check per vertex.
    """
    budget = budget or default_budget()
    budget.check_size(net, "max-flow enumeration")
    counter = _Counter(budget, "max-flow enumeration")
    target = max_flow(net).value
    d, s, t = net.digraph, net.source, net.sink
    depth = {s: 0}
    frontier = [s]
    while frontier:
        nxt = []
        for v in frontier:
            for w in d.out_neighbours(v) + d.in_neighbours(v):
                if w not in depth:
                    depth[w] = depth[v] + 1
                    nxt.append(w)
        frontier = nxt
    far = len(depth) + 1
    arcs = sorted(d.arcs, key=lambda a: (max(depth.get(a.tail, far), depth.get(a.head, far)), a.id))
    need = {v: 0 for v in range(d.vertex_count)}
    need[s], need[t] = -target, target
    balance = [0] * d.vertex_count
    slack_in = [0] * d.vertex_count
    slack_out = [0] * d.vertex_count
    for a in arcs:
        slack_out[a.tail] += net.cap(a.id)
        slack_in[a.head] += net.cap(a.id)
    values: Dict[ArcId, int] = {}

    def feasible(v: VertexId) -> bool:
        gap = need[v] - balance[v]
        return -slack_out[v] <= gap <= slack_in[v]

    def branch(i: int) -> Iterator[Flow]:
        counter.tick()
        if i == len(arcs):
            yield Flow(net, {a: x for a, x in values.items() if x > 0})
            return
        arc = arcs[i]
        cap = net.cap(arc.id)
        slack_out[arc.tail] -= cap
        slack_in[arc.head] -= cap
        for x in range(cap + 1):
            balance[arc.tail] -= x
            balance[arc.head] += x
            if feasible(arc.tail) and feasible(arc.head):
                values[arc.id] = x
                yield from branch(i + 1)
            balance[arc.tail] += x
            balance[arc.head] -= x
        values.pop(arc.id, None)
        slack_out[arc.tail] += cap
        slack_in[arc.head] += cap

    yield from branch(0)


# === SAT ===

def brute_force_sat_assignment(f: CnfFormula) -> Optional[Tuple[bool, ...]]:
    """A satisfying assignment (index i is variable i+1), or None."""
    if f.variable_count > Config.Budget.SAT_MAX_VARIABLES:
        raise BudgetError("SAT enumeration", estimate=f.variable_count, limit=Config.Budget.SAT_MAX_VARIABLES)
    for bits in itertools.product((True, False), repeat=f.variable_count):
        if f.satisfied_by(bits):
            return bits
    return None


def sat_bruteforce(f: CnfFormula) -> bool:
    return brute_force_sat_assignment(f) is not None
