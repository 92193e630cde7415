"""
Persistence of flows under arc (or vertex) deletions.

The persistence of a flow x for k is the smallest maximum-flow value left in
its support D_x after deleting k arcs that lie in no minimum cut of D. Only
exhaustive evaluation is offered.
"""

import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import AlgorithmError, BudgetError, PreconditionError
from .maxflow import max_flow, mincut_arcs
from .netcore import ArcId, Flow, Network, VertexId, prune_to_st_paths, support
from .oracle import Budget, default_budget, enumerate_max_flows

logger = logging.getLogger(__name__)

MODES = ("arc", "vertex")


@dataclass(frozen=True)
class PersistenceReport:
    flow: Flow
    k: int
    mode: str
    worst_set: Tuple[int, ...]
    residual_value: int
    eligible_count: int

    def to_dict(self) -> Dict[str, Any]:
        worst = list(self.worst_set) if self.mode == "arc" else [v + 1 for v in self.worst_set]
        return {
            "k": self.k,
            "mode": self.mode,
            "flow_value": self.flow.value,
            "residual_value": self.residual_value,
            "worst_set": worst,
            "eligible": self.eligible_count,
            "flow": [{"arc": a, "x": self.flow.x[a]} for a in sorted(self.flow.x)],
        }


@dataclass(frozen=True)
class ThresholdReport:
    """Fewest arc deletions pushing the maximum-flow value below K."""
    K: int
    original_value: int
    deletions: int
    arc_set: Tuple[ArcId, ...]
    value_after: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "K": self.K,
            "original_value": self.original_value,
            "deletions": self.deletions,
            "arc_set": list(self.arc_set),
            "value_after": self.value_after,
        }


def _protected_vertices(net: Network, protected_arcs: FrozenSet[ArcId]) -> FrozenSet[VertexId]:
    """V_mincut plus s and t."""
    ends = {net.source, net.sink}
    for arc_id in protected_arcs:
        arc = net.digraph.arc(arc_id)
        ends.update((arc.tail, arc.head))
    return frozenset(ends)


def _eligible(net: Network, mode: str, protected_arcs: FrozenSet[ArcId]) -> List[int]:
    if mode == "arc":
        return sorted(a.id for a in net.arcs if a.id not in protected_arcs)
    blocked = _protected_vertices(net, protected_arcs)
    return [v for v in range(net.vertex_count) if v not in blocked]


def _residual_value(x: Flow, mode: str, deleted: Sequence[int]) -> int:
    net = x.network
    gone = set(deleted)
    d_x = support(x)
    if mode == "arc":
        keep = [a for a in d_x.arc_ids if a not in gone]
    else:
        keep = [a.id for a in d_x.arcs if a.tail not in gone and a.head not in gone]
    return max_flow(net.restrict(keep)).value


def _persistence(x: Flow, k: int, mode: str, protected_arcs: FrozenSet[ArcId], budget: Budget) -> PersistenceReport:
    eligible = _eligible(x.network, mode, protected_arcs)
    size = min(k, len(eligible))
    subsets = comb(len(eligible), size)
    if subsets > budget.max_states:
        raise BudgetError("persistence subsets", estimate=subsets, limit=budget.max_states)
    worst: Optional[Tuple[int, ...]] = None
    worst_value: Optional[int] = None
    for deleted in itertools.combinations(eligible, size):
        value = _residual_value(x, mode, deleted)
        if worst_value is None or value < worst_value:
            worst, worst_value = deleted, value
            if value == 0:
                break
    return PersistenceReport(x, k, mode, worst or (), worst_value or 0, len(eligible))


def persistence_value(x: Flow, k: int, mode: str = "arc", budget: Optional[Budget] = None) -> PersistenceReport:
    """
    Minimum, over sets A′ of k arcs outside A_mincut (or k vertices outside
    V_mincut ∪ {s,t}), of the maximum-flow value of D_x − A′ under the
    capacities c. With fewer than k eligible elements all of them are deleted.
    """
    if k < 0:
        raise PreconditionError(f"k must be non-negative, got {k}")
    if mode not in MODES:
        raise PreconditionError(f"unknown persistence mode {mode!r}")
    report = _persistence(x, k, mode, mincut_arcs(x.network), budget or default_budget())
    logger.info(f"persistence[{mode}] k={k}: {report.residual_value} of {x.value} survives")
    return report


def best_persistent_max_flow_bruteforce(
    net: Network, k: int, mode: str = "arc", budget: Optional[Budget] = None
) -> Tuple[Flow, PersistenceReport]:
    """
    The maximum flow with the largest persistence for k; ties go to the
    smallest flow vector. The enumeration of maximum flows is bounded by the
    size limits and the state budget of `budget`.
    """
    if k < 0:
        raise PreconditionError(f"k must be non-negative, got {k}")
    if mode not in MODES:
        raise PreconditionError(f"unknown persistence mode {mode!r}")
    budget = budget or default_budget()
    budget.check_size(net, "persistence search")
    protected = mincut_arcs(net)
    best: Optional[PersistenceReport] = None
    count = 0
    for flow in enumerate_max_flows(net, budget):
        count += 1
        report = _persistence(flow, k, mode, protected, budget)
        if best is None or report.residual_value > best.residual_value or (
            report.residual_value == best.residual_value and flow.vector() < best.flow.vector()
        ):
            best = report
    logger.info(f"persistence[{mode}] k={k}: best {best.residual_value} over {count} maximum flows")
    return best.flow, best


def min_arc_deletions_below(net: Network, K: int, budget: Optional[Budget] = None) -> ThresholdReport:
    """Fewest arcs whose deletion leaves a maximum flow below K, by increasing subset size."""
    if K < 1:
        raise PreconditionError(f"K must be positive, got {K}")
    budget = budget or default_budget()
    original = max_flow(net).value
    if original < K:
        return ThresholdReport(K, original, 0, (), original)
    candidates = sorted(prune_to_st_paths(net).digraph.arc_ids)
    checked = 0
    for size in range(1, len(candidates) + 1):
        for deleted in itertools.combinations(candidates, size):
            checked += 1
            if checked > budget.max_states:
                raise BudgetError("deletion search", estimate=checked, limit=budget.max_states)
            gone = set(deleted)
            value = max_flow(net.restrict(a for a in net.digraph.arc_ids if a not in gone)).value
            if value < K:
                logger.info(f"threshold K={K}: {size} deletions after {checked} subsets")
                return ThresholdReport(K, original, size, deleted, value)
    raise AlgorithmError(f"deleting every s→t arc left a flow of value >= {K}")
