"""
Approximation of p-decomposable maximum flows.

For every i ≤ p the largest ν such that the threshold multigraph D_ν holds
i disjoint s→t paths is found by binary search; sending ν on each of those
paths gives i·ν, and the best i is returned. The result is within a factor
H(p) of the optimum.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .decomp import Component, acyclify, decompose
from .errors import AlgorithmError, PreconditionError
from .maxflow import max_flow, split_vertices
from .netcore import Arc, ArcId, Digraph, Flow, Network

logger = logging.getLogger(__name__)


class SplitVariant(Enum):
    UNRESTRICTED = "any"
    ARC_DISJOINT = "arc"
    VERTEX_DISJOINT = "vertex"


@dataclass(frozen=True)
class PSplitSolution:
    flow: Flow
    paths: Tuple[Component, ...]
    p_used: int
    nu_star: Optional[int]
    i_star: int

    @property
    def value(self) -> int:
        return self.flow.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.flow.value,
            "p_used": self.p_used,
            "nu": self.nu_star,
            "i": self.i_star,
            "paths": [c.to_dict() for c in self.paths],
            "flow": [{"arc": a, "x": self.flow.x[a]} for a in sorted(self.flow.x)],
        }


def empty_solution(net: Network) -> PSplitSolution:
    return PSplitSolution(Flow.zero(net), (), 0, 0, 0)


def harmonic(p: int) -> Fraction:
    """H(p) = 1 + 1/2 + ... + 1/p, exactly."""
    if p < 1:
        raise PreconditionError(f"harmonic number needs p >= 1, got {p}")
    return sum((Fraction(1, i) for i in range(1, p + 1)), Fraction(0))


def hardness_bounds(p: int, family: str) -> Tuple[int, int]:
    """(o⁺, o⁻) of the inapproximability construction for p, family 'rho1' or 'rho2'."""
    if p < 2:
        raise PreconditionError(f"hardness constructions need p >= 2, got {p}")
    if family == "rho1":
        q, r = divmod(p, 4)
        return {0: (6 * q, 5 * q), 1: (6 * q + 1, 5 * q + 1), 2: (6 * q + 3, 5 * q + 2), 3: (6 * q + 4, 5 * q + 3)}[r]
    if family == "rho2":
        q = p // 2
        return (5 * q, 4 * q) if p % 2 == 0 else (5 * q + 1, 4 * q + 1)
    raise PreconditionError(f"unknown hardness family {family!r}")


def hardness_ratio(p: int) -> Fraction:
    """Best inapproximability ratio known for p: min over both families of o⁻/o⁺."""
    return min(Fraction(lo, hi) for hi, lo in (hardness_bounds(p, "rho1"), hardness_bounds(p, "rho2")))


def threshold_capacities(net: Network, nu: int, variant: SplitVariant, cap: Optional[int] = None) -> np.ndarray:
    """Number of copies of each arc (ArcId order) in D_ν, optionally capped."""
    if nu < 1:
        raise PreconditionError(f"ν must be positive, got {nu}")
    caps = np.array([net.cap(a.id) for a in sorted(net.arcs)], dtype=np.int64)
    if variant is SplitVariant.UNRESTRICTED:
        copies = caps // nu
    else:
        copies = (caps >= nu).astype(np.int64)
    if cap is not None:
        copies = np.minimum(copies, cap)
    return copies


def _threshold(net: Network, nu: int, variant: SplitVariant, cap: Optional[int] = None) -> Tuple[Digraph, Dict[ArcId, ArcId]]:
    copies = threshold_capacities(net, nu, variant, cap)
    arcs: List[Arc] = []
    origin: Dict[ArcId, ArcId] = {}
    for arc, count in zip(sorted(net.arcs), copies.tolist()):
        for _ in range(count):
            origin[len(arcs)] = arc.id
            arcs.append(Arc(len(arcs), arc.tail, arc.head))
    return Digraph(net.vertex_count, tuple(arcs)), origin


def build_D_nu(net: Network, nu: int, variant: SplitVariant) -> Digraph:
    """
    D_ν: arcs with c < ν are dropped; the others are repeated ⌊c/ν⌋ times
    (unrestricted) or kept once (disjoint variants).
    """
    return _threshold(net, nu, variant)[0]


def _disjoint_paths(net: Network, nu: int, i: int, variant: SplitVariant) -> Optional[List[List[ArcId]]]:
    """i disjoint s→t paths of D_ν as lists of original ArcIds, or None."""
    d_nu, origin = _threshold(net, nu, variant, cap=i)
    unit = Network.unit(d_nu, net.source, net.sink)
    if variant is SplitVariant.VERTEX_DISJOINT:
        split = split_vertices(unit, 1)
        flow = max_flow(split.network, limit=i)
        if flow.value < i:
            return None
        flow = Flow(unit, split.original_x(flow))
    else:
        flow = max_flow(unit, limit=i)
        if flow.value < i:
            return None
    paths = [[origin[a] for a in comp.arcs] for comp in decompose(acyclify(flow)).paths]
    if len(paths) != i:
        raise AlgorithmError(f"unit flow of value {i} decomposed into {len(paths)} paths")
    return paths


def _largest_nu(net: Network, i: int, variant: SplitVariant) -> int:
    """c_i: the largest ν in [1, c_max] such that D_ν holds i disjoint paths; 0 if none does."""
    lo, hi = 0, net.max_capacity
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _disjoint_paths(net, mid, i, variant) is not None:
            lo = mid
        else:
            hi = mid - 1
    return lo


def approx_p_split(net: Network, p: int, variant: SplitVariant = SplitVariant.UNRESTRICTED) -> PSplitSolution:
    """
    1/H(p)-approximation of the maximum flow decomposable into at most p
    path-flows (pairwise arc- or vertex-disjoint for the disjoint variants).
    """
    if p < 1:
        raise PreconditionError(f"p must be at least 1, got {p}")
    best_i, best_nu = 0, 0
    previous: Optional[int] = None
    for i in range(1, p + 1):
        c_i = _largest_nu(net, i, variant)
        logger.debug(f"psplit[{variant.value}]: c_{i} = {c_i}")
        if previous is not None and c_i > previous:
            raise AlgorithmError(f"c_{i} = {c_i} exceeds c_{i - 1} = {previous}")
        previous = c_i
        if c_i == 0:
            break
        if i * c_i > best_i * best_nu:
            best_i, best_nu = i, c_i
    if best_i == 0:
        logger.info("psplit: no s→t path")
        return empty_solution(net)

    paths = _disjoint_paths(net, best_nu, best_i, variant)
    x: Dict[ArcId, int] = {}
    components: List[Component] = []
    for arc_ids in paths:
        arcs = [net.digraph.arc(a) for a in arc_ids]
        for a in arc_ids:
            x[a] = x.get(a, 0) + best_nu
        vertices = tuple([arcs[0].tail] + [a.head for a in arcs])
        components.append(Component("path", vertices, tuple(arc_ids), best_nu))
    flow = Flow(net, x)
    logger.info(f"psplit[{variant.value}]: value {flow.value} = {best_i} paths x ν={best_nu}")
    return PSplitSolution(flow, tuple(components), best_i, best_nu, best_i)
