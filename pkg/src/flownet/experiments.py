"""
Seeded experiment sweeps. Each suite builds one DataFrame row per instance,
checks the property it is about, and can be written to CSV under
Config.Files.REPORT_DIR.
"""

import logging
import pathlib
import random
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from .config import Config
from .decomp import acyclify, decompose, reconstruct
from .degflow import deg_flow_value_k_plus_1, widest_path
from .errors import BudgetError
from .gadgets import CnfFormula, gen_random_network, gen_sat_deg_network
from .maxflow import arc_connectivity, max_flow
from .netcore import Flow, Network, is_acyclic, support
from .oracle import gadget_budget, oracle_deg_max_flow, oracle_p_split, sat_bruteforce
from .psplit import SplitVariant, approx_p_split, harmonic
from .strongflow import two_arc_strong_max_flow
from .tricot import arc_disjoint_exact_acyclic, tricot_dp_exact

logger = logging.getLogger(__name__)


def _random_instance(rng: random.Random, max_vertices: int = 8, max_arcs: int = 11, acyclic: bool = False):
    vertices = rng.randint(3, max_vertices)
    arcs = rng.randint(vertices - 1, max_arcs)
    return gen_random_network(rng.randrange(2 ** 31), vertices, arcs, 4, acyclic).network


def approximation_suite(count: int, seed: int) -> pd.DataFrame:
    """approx_p_split against the exact optimum, p in {2,3,4}, all three variants."""
    rng = random.Random(seed)
    rows: List[Dict] = []
    for instance in range(count):
        net = _random_instance(rng)
        for p in (2, 3, 4):
            for variant in SplitVariant:
                try:
                    exact = oracle_p_split(net, p, variant)
                except BudgetError as e:
                    logger.warning(f"instance {instance}: oracle skipped ({e})")
                    continue
                approx = approx_p_split(net, p, variant).value
                rows.append({
                    "instance": instance,
                    "p": p,
                    "variant": variant.value,
                    "approx": approx,
                    "oracle": exact,
                    "holds": harmonic(p) * approx >= exact,
                })
    df = pd.DataFrame(rows)
    if not df.empty:
        df["ratio"] = np.where(df["oracle"] > 0, df["approx"] / df["oracle"].clip(lower=1), 1.0)
    return df


def tricot_suite(count: int, seed: int) -> pd.DataFrame:
    """Exact disjoint solvers on acyclic networks against the oracle; p = 1 against the widest path."""
    rng = random.Random(seed)
    rows: List[Dict] = []
    for instance in range(count):
        net = _random_instance(rng, max_vertices=7, max_arcs=10, acyclic=True)
        _, widest = widest_path(net)
        for p in (1, 2, 3):
            try:
                vertex_oracle = oracle_p_split(net, p, SplitVariant.VERTEX_DISJOINT)
                arc_oracle = oracle_p_split(net, p, SplitVariant.ARC_DISJOINT)
                vertex_value = tricot_dp_exact(net, p).value
                arc_value = arc_disjoint_exact_acyclic(net, p).value
            except BudgetError as e:
                logger.warning(f"instance {instance}: p={p} skipped ({e})")
                continue
            rows.append({
                "instance": instance,
                "p": p,
                "vertex": vertex_value,
                "vertex_oracle": vertex_oracle,
                "arc": arc_value,
                "arc_oracle": arc_oracle,
                "widest": widest,
                "holds": vertex_value == vertex_oracle and arc_value == arc_oracle and (p > 1 or vertex_value == widest),
            })
    return pd.DataFrame(rows)


def strong_suite(count: int, seed: int) -> pd.DataFrame:
    """two_arc_strong_max_flow on random networks with λ(s,t) ≥ 2."""
    rng = random.Random(seed)
    rows: List[Dict] = []
    attempts = 0
    while len(rows) < count and attempts < 50 * count:
        attempts += 1
        net = _random_instance(rng)
        if arc_connectivity(net.digraph, net.source, net.sink) < 2:
            continue
        history: List[int] = []
        flow = two_arc_strong_max_flow(net, history)
        lam = arc_connectivity(support(flow), net.source, net.sink)
        decreasing = all(a > b for a, b in zip(history, history[1:]))
        rows.append({
            "instance": len(rows),
            "value": flow.value,
            "max_flow": max_flow(net).value,
            "support_lambda": lam,
            "reroutings": len(history),
            "holds": flow.value == max_flow(net).value and lam >= 2 and decreasing,
        })
    return pd.DataFrame(rows)


def k_plus_one_suite(count: int, seed: int) -> pd.DataFrame:
    """The value-(k+1) decision against the degree oracle, k in {2,3}."""
    rng = random.Random(seed)
    rows: List[Dict] = []
    for instance in range(count):
        net = _random_instance(rng)
        for k in (2, 3):
            try:
                exact = oracle_deg_max_flow(net, k)
            except BudgetError as e:
                logger.warning(f"instance {instance}: oracle skipped ({e})")
                continue
            witness = deg_flow_value_k_plus_1(net, k)
            found = witness is not None
            degree_ok = not found or support(witness).max_out_degree() <= k
            rows.append({
                "instance": instance,
                "k": k,
                "decided": found,
                "oracle": exact,
                "holds": found == (exact >= k + 1) and degree_ok,
            })
    return pd.DataFrame(rows)


def _circulating_flow(rng: random.Random, max_vertices: int = 7) -> Flow:
    """A saturated flow made of up to two s→t paths and one to three cycles, one fresh arc per step."""
    n = rng.randint(3, max_vertices)
    s, t = 0, n - 1
    triples = []
    walks = []
    for _ in range(rng.randint(0, 2)):
        middle = rng.sample(range(1, n - 1), rng.randint(0, n - 2))
        walks.append([s] + middle + [t])
    for _ in range(rng.randint(1, 3)):
        ring = rng.sample(range(n), rng.randint(2, n))
        walks.append(ring + ring[:1])
    for walk in walks:
        value = rng.randint(1, 4)
        triples += [(u, v, value) for u, v in zip(walk, walk[1:])]
    net = Network.build(n, triples, s, t)
    return Flow(net, {i: c for i, (_, _, c) in enumerate(triples)})


def decomposition_suite(count: int, seed: int) -> pd.DataFrame:
    """Component counts and acyclify guarantees on random flows that carry circulations."""
    rng = random.Random(seed)
    rows: List[Dict] = []
    for instance in range(count):
        flow = _circulating_flow(rng)
        net = flow.network
        parts = decompose(flow)
        clean = acyclify(flow)
        n, m = net.vertex_count, net.digraph.arc_count
        rows.append({
            "instance": instance,
            "components": len(parts.components),
            "cycles": len(parts.cycles),
            "bound": n + m,
            "holds": (
                len(parts.components) <= n + m
                and len(parts.cycles) <= m
                and reconstruct(parts.components) == dict(flow.x)
                and clean.value == flow.value
                and set(clean.x) <= set(flow.x)
                and is_acyclic(support(clean))[0]
            ),
        })
    return pd.DataFrame(rows)


def _random_formula(rng: random.Random) -> CnfFormula:
    n = rng.randint(1, 3)
    m = rng.randint(1, 4)
    clauses = tuple(
        tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(3)) for _ in range(m)
    )
    return CnfFormula(n, clauses)


def degree_gadget_suite(count: int, seed: int) -> pd.DataFrame:
    """Satisfiability against the degree-2 optimum of the SAT gadget."""
    rng = random.Random(seed)
    rows: List[Dict] = []
    for instance in range(count):
        f = _random_formula(rng)
        gadget = gen_sat_deg_network(f, 2)
        value = oracle_deg_max_flow(gadget.network, 2, budget=gadget_budget())
        satisfiable = sat_bruteforce(f)
        rows.append({
            "instance": instance,
            "variables": f.variable_count,
            "clauses": gadget.metadata["clauses"],
            "satisfiable": satisfiable,
            "oracle": value,
            "target": gadget.target["value"],
            "holds": satisfiable == (value == gadget.target["value"]),
        })
    return pd.DataFrame(rows)


SUITES: Dict[str, Callable[[int, int], pd.DataFrame]] = {
    "approx": approximation_suite,
    "tricot": tricot_suite,
    "strong2": strong_suite,
    "kplus1": k_plus_one_suite,
    "decomp": decomposition_suite,
    "deggadget": degree_gadget_suite,
}


def summarize(df: pd.DataFrame) -> pd.DataFrame:
    """Row count and pass rate per parameter group."""
    if df.empty:
        return df
    keys = [c for c in ("p", "variant", "k") if c in df.columns]
    if not keys:
        return pd.DataFrame({"rows": [len(df)], "passed": [int(df["holds"].sum())]})
    summary = df.groupby(keys)["holds"].agg(["count", "sum"]).reset_index()
    return summary.rename(columns={"count": "rows", "sum": "passed"})


def run_suite(name: str, count: int, seed: int, out: Optional[str] = None) -> pd.DataFrame:
    df = SUITES[name](count, seed)
    target = pathlib.Path(out) if out else pathlib.Path(Config.Files.REPORT_DIR) / f"{name}_seed{seed}.csv"
    target.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(target, index=False)
    failed = int((~df["holds"].astype(bool)).sum()) if not df.empty else 0
    logger.info(f"report {name}: {len(df)} rows, {failed} failures, saved to {target}")
    return df
