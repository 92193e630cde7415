"""
Command-line entry point: one subcommand per operation.

Networks are read from a file or stdin in the flownet text format; results go
to stdout as JSON (or plain text), logs go to stderr. Exit codes: 0 success,
2 input error, 3 budget exceeded, 4 precondition violated, 1 internal error.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, List, Optional, Sequence

from .config import Config
from .decomp import acyclify, decompose
from .degflow import block_chain, deg_flow_value_k_plus_1, unit_capacity_deg_max_flow, widest_path
from .errors import FlownetError, InputError
from .experiments import SUITES, run_suite, summarize
from .gadgets import (
    LINKAGE_NEGATIVE,
    LINKAGE_POSITIVE,
    GadgetOutput,
    gen_b2sat_value9_network,
    gen_inout_tail,
    gen_lambda_counterexample,
    gen_psplit_hard,
    gen_random_network,
    gen_sat_deg_network,
    gen_separable_hard,
    gen_vertex_disjoint_hard,
    parse_dimacs_cnf,
)
from .maxflow import arc_connectivity, max_flow, min_cut, mincut_arcs
from .netcore import Flow, Network, flow_from_dict, flow_to_dict, format_network, parse_network, support, to_dot
from .oracle import (
    Budget,
    brute_force_sat_assignment,
    default_budget,
    enumerate_max_flows,
    gadget_budget,
    oracle_deg_max_flow,
    oracle_p_split,
    oracle_q_separable,
)
from .persist import best_persistent_max_flow_bruteforce, min_arc_deletions_below, persistence_value
from .psplit import SplitVariant, approx_p_split, harmonic
from .strongflow import two_arc_strong_max_flow
from .tricot import arc_disjoint_exact_acyclic, tricot_dp_exact

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input: str
    output: str
    seed: int
    budget_states: Optional[int]
    log_level: str
    options: argparse.Namespace

    def budget(self) -> Budget:
        budget = gadget_budget() if getattr(self.options, "preset", "default") == "gadget" else default_budget()
        if self.budget_states is not None:
            budget = replace(budget, max_states=self.budget_states)
        return budget


# === Helpers ===

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _network(config: RunConfig) -> Network:
    return parse_network(_read_text(config.input))


def _write_dot(config: RunConfig, net: Network, flow: Optional[Flow] = None) -> None:
    path = getattr(config.options, "dot", None)
    if not path:
        return
    digraph = support(flow) if flow is not None else net.digraph
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(to_dot(digraph, flow=flow))
    logger.info(f"DOT written to {path}")


def _emit(config: RunConfig, result: Any) -> None:
    if isinstance(result, str):
        sys.stdout.write(result)
        return
    if config.output == "text" and isinstance(result, dict):
        for key, value in result.items():
            rendered = value if isinstance(value, (int, str, bool, type(None))) else json.dumps(value)
            sys.stdout.write(f"{key}: {rendered}\n")
        return
    sys.stdout.write(json.dumps(result, indent=2) + "\n")


def _input_flow(config: RunConfig, net: Network) -> Flow:
    """The flow given by --flow, or a maximum flow when none is given."""
    path = getattr(config.options, "flow", None)
    if not path:
        return max_flow(net)
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg})", e.lineno) from None
    return flow_from_dict(net, data)


# === Subcommands ===

def cmd_maxflow(config: RunConfig) -> Dict[str, Any]:
    net = _network(config)
    flow = max_flow(net)
    _write_dot(config, net, flow)
    return flow_to_dict(flow)


def cmd_mincut(config: RunConfig) -> Dict[str, Any]:
    net = _network(config)
    result = min_cut(net).to_dict()
    result["mincut_arcs"] = sorted(mincut_arcs(net))
    return result


def cmd_lambda(config: RunConfig) -> Dict[str, Any]:
    net = _network(config)
    return {"lambda": arc_connectivity(net.digraph, net.source, net.sink)}


def cmd_decompose(config: RunConfig) -> Dict[str, Any]:
    net = _network(config)
    flow = _input_flow(config, net)
    return flow_to_dict(flow, decompose(flow))


def cmd_acyclify(config: RunConfig) -> Dict[str, Any]:
    net = _network(config)
    flow = acyclify(_input_flow(config, net))
    _write_dot(config, net, flow)
    return flow_to_dict(flow)


def cmd_degflow(config: RunConfig) -> Dict[str, Any]:
    net = _network(config)
    k, mode = config.options.k, config.options.mode
    if mode == "widest":
        path, value = widest_path(net)
        return {"value": value, "path": [a.id for a in path] if path else []}
    if mode == "unit":
        flow = unit_capacity_deg_max_flow(net, k)
        _write_dot(config, net, flow)
        return flow_to_dict(flow)
    if mode == "blocks":
        return block_chain(net).to_dict()
    flow = deg_flow_value_k_plus_1(net, k)
    if flow is None:
        return {"k": k, "exists": False}
    _write_dot(config, net, flow)
    return {"k": k, "exists": True, **flow_to_dict(flow)}


def cmd_strong2(config: RunConfig) -> Dict[str, Any]:
    net = _network(config)
    history: List[int] = []
    flow = two_arc_strong_max_flow(net, history)
    _write_dot(config, net, flow)
    result = flow_to_dict(flow)
    result["support_lambda"] = arc_connectivity(support(flow), net.source, net.sink)
    result["cut_arc_history"] = history
    return result


def cmd_psplit(config: RunConfig) -> Dict[str, Any]:
    net = _network(config)
    p = config.options.p
    solution = approx_p_split(net, p, SplitVariant(config.options.variant))
    result = solution.to_dict()
    result["guarantee"] = str(1 / harmonic(p))
    return result


def cmd_tricot(config: RunConfig) -> Dict[str, Any]:
    net = _network(config)
    if config.options.variant == "arc":
        solution = arc_disjoint_exact_acyclic(net, config.options.p, config.budget_states)
    else:
        solution = tricot_dp_exact(net, config.options.p, config.budget_states)
    return solution.to_dict()


def cmd_persist(config: RunConfig) -> Dict[str, Any]:
    net = _network(config)
    opts = config.options
    if opts.action == "eval":
        return persistence_value(_input_flow(config, net), opts.k, opts.mode, config.budget()).to_dict()
    if opts.action == "best":
        _, report = best_persistent_max_flow_bruteforce(net, opts.k, opts.mode, config.budget())
        return report.to_dict()
    return min_arc_deletions_below(net, opts.K, config.budget()).to_dict()


def _gadget(config: RunConfig) -> GadgetOutput:
    opts = config.options
    name = opts.name
    if name in ("sat-deg", "inout", "b2sat9", "vertex"):
        if not opts.cnf:
            raise InputError(f"gadget {name} needs --cnf")
        f = parse_dimacs_cnf(_read_text(opts.cnf))
        if name == "sat-deg":
            return gen_sat_deg_network(f, opts.k)
        if name == "inout":
            return gen_inout_tail(gen_sat_deg_network(f, 2))
        if name == "b2sat9":
            return gen_b2sat_value9_network(f)
        return gen_vertex_disjoint_hard(f)
    if name == "lambda":
        return gen_lambda_counterexample(opts.lam)
    if name == "psplit":
        linkage = LINKAGE_POSITIVE if opts.linkage == "positive" else LINKAGE_NEGATIVE
        return gen_psplit_hard(opts.p, linkage, opts.family)
    if name == "separable":
        return gen_separable_hard(_network(config), opts.q)
    return gen_random_network(config.seed, opts.vertices, opts.arcs, opts.max_cap, opts.acyclic, opts.unit)


def cmd_gadget(config: RunConfig) -> str:
    gadget = _gadget(config)
    if config.options.labels:
        with open(config.options.labels, "w", encoding="utf-8") as handle:
            handle.write(gadget.labels_json())
    if getattr(config.options, "dot", None):
        with open(config.options.dot, "w", encoding="utf-8") as handle:
            handle.write(to_dot(gadget.network.digraph, gadget.labels))
    comments = [f"gadget {config.options.name}", f"target {json.dumps(gadget.target)}"]
    return format_network(gadget.network, comments)


def cmd_oracle(config: RunConfig) -> Dict[str, Any]:
    opts = config.options
    budget = config.budget()
    if opts.problem == "sat":
        if not opts.cnf:
            raise InputError("oracle sat needs --cnf")
        assignment = brute_force_sat_assignment(parse_dimacs_cnf(_read_text(opts.cnf)))
        return {"satisfiable": assignment is not None, "assignment": list(assignment) if assignment else None}
    net = _network(config)
    if opts.problem == "degflow":
        return {"value": oracle_deg_max_flow(net, opts.k, opts.k_in, budget)}
    if opts.problem == "psplit":
        return {"value": oracle_p_split(net, opts.p, SplitVariant(opts.variant), budget)}
    if opts.problem == "separable":
        return {"value": oracle_q_separable(net, opts.q, opts.mode, budget)}
    flows = []
    for flow in enumerate_max_flows(net, budget):
        flows.append({
            "flow": [{"arc": a, "x": flow.x[a]} for a in sorted(flow.x)],
            "support_lambda": arc_connectivity(support(flow), net.source, net.sink),
        })
    return {"value": max_flow(net).value, "count": len(flows), "flows": flows}


def cmd_report(config: RunConfig) -> Dict[str, Any]:
    opts = config.options
    df = run_suite(opts.suite, opts.count, config.seed, opts.out)
    failures = int((~df["holds"].astype(bool)).sum()) if not df.empty else 0
    return {"suite": opts.suite, "rows": len(df), "failures": failures, "summary": summarize(df).to_dict(orient="records")}


COMMANDS: Dict[str, Callable[[RunConfig], Any]] = {
    "maxflow": cmd_maxflow,
    "mincut": cmd_mincut,
    "lambda": cmd_lambda,
    "decompose": cmd_decompose,
    "acyclify": cmd_acyclify,
    "degflow": cmd_degflow,
    "strong2": cmd_strong2,
    "psplit": cmd_psplit,
    "tricot": cmd_tricot,
    "persist": cmd_persist,
    "gadget": cmd_gadget,
    "oracle": cmd_oracle,
    "report": cmd_report,
}


# === Argument parsing ===

def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", default="-", help="Network file ('-' for stdin).")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json", help="Output mode for results.")
    common.add_argument("--budget", type=int, default=None, help="State budget for exhaustive searches.")
    common.add_argument("--seed", type=int, default=0, help="Seed for generated instances.")
    common.add_argument("--log-level", default=Config.LOG_LEVEL, help="Logging level (stderr).")
    common.add_argument("--dot", default=None, help="Also write a DOT rendering to this path.")

    ap = argparse.ArgumentParser(prog="flownet", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    for name, text in (("maxflow", "maximum flow"), ("mincut", "minimum cut and A_mincut"), ("lambda", "arc-connectivity between s and t")):
        _add_input(sub.add_parser(name, parents=[common], help=text))
    for name in ("decompose", "acyclify"):
        p = sub.add_parser(name, parents=[common], help=f"{name} a flow (default: a maximum flow)")
        _add_input(p)
        p.add_argument("--flow", default=None, help="Flow JSON file.")

    p = sub.add_parser("degflow", parents=[common], help="degree-constrained flows")
    _add_input(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["kplus1", "unit", "widest", "blocks"], default="kplus1")

    _add_input(sub.add_parser("strong2", parents=[common], help="maximum flow with 2-arc-strong support"))

    p = sub.add_parser("psplit", parents=[common], help="H(p)-approximate p-decomposable flow")
    _add_input(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--variant", choices=[v.value for v in SplitVariant], default="any")

    p = sub.add_parser("tricot", parents=[common], help="exact disjoint p-decomposable flow (acyclic)")
    _add_input(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--variant", choices=["vertex", "arc"], default="vertex")

    p = sub.add_parser("persist", parents=[common], help="flow persistence under deletions")
    p.add_argument("action", choices=["eval", "best", "threshold"])
    _add_input(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--K", type=int, default=1)
    p.add_argument("--mode", choices=["arc", "vertex"], default="arc")
    p.add_argument("--flow", default=None, help="Flow JSON file for 'eval'.")
    p.add_argument("--preset", choices=["default", "gadget"], default="default", help="Size limits for the exhaustive search.")

    p = sub.add_parser("gadget", parents=[common], help="generate a reduction or random instance")
    p.add_argument("name", choices=["sat-deg", "inout", "b2sat9", "lambda", "psplit", "vertex", "separable", "random"])
    p.add_argument("input", nargs="?", default="-", help="Input network for 'separable'.")
    p.add_argument("--cnf", default=None, help="DIMACS CNF file.")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--family", choices=["rho1", "rho2"], default="rho1")
    p.add_argument("--linkage", choices=["positive", "negative"], default="positive")
    p.add_argument("--lambda", dest="lam", type=int, default=3)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--arcs", type=int, default=10)
    p.add_argument("--max-cap", type=int, default=4)
    p.add_argument("--acyclic", action="store_true")
    p.add_argument("--unit", action="store_true")
    p.add_argument("--labels", default=None, help="Write vertex labels JSON to this path.")

    p = sub.add_parser("oracle", parents=[common], help="exhaustive reference solvers")
    p.add_argument("problem", choices=["degflow", "psplit", "separable", "enumerate-max-flows", "sat"])
    _add_input(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--k-in", type=int, default=None)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--variant", choices=[v.value for v in SplitVariant], default="any")
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--mode", choices=["vertex", "arc"], default="vertex")
    p.add_argument("--cnf", default=None)
    p.add_argument("--preset", choices=["default", "gadget"], default="default", help="Size limits for the exhaustive search.")

    p = sub.add_parser("report", parents=[common], help="seeded experiment sweeps written as CSV")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--out", default=None)
    return ap


def build_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        subcommand=args.subcommand,
        input=getattr(args, "input", "-"),
        output=args.format,
        seed=args.seed,
        budget_states=args.budget,
        log_level=args.log_level,
        options=args,
    )


def run(config: RunConfig) -> int:
    logging.basicConfig(
        level=getattr(logging, config.log_level.upper(), logging.WARNING),
        format=Config.LOG_FORMAT,
        datefmt=Config.LOG_DATEFMT,
        stream=sys.stderr,
    )
    try:
        result = COMMANDS[config.subcommand](config)
    except FlownetError as e:
        logger.debug(f"{config.subcommand} failed", exc_info=True)
        sys.stderr.write(f"flownet {config.subcommand}: {e}\n")
        return e.exit_code
    _emit(config, result)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(build_config(argv))
