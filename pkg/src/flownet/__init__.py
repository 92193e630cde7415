"""
flownet: constrained integer (s,t)-flows on directed multigraphs.

Maximum flows with degree-bounded, 2-arc-strong or few-path supports,
their decomposition, persistence under deletions, hardness gadgets and
exhaustive reference solvers.
"""

from .errors import AlgorithmError, BudgetError, FlownetError, FlowValidationError, InputError, PreconditionError
from .netcore import Arc, Digraph, Flow, Network, format_network, parse_network, validate_flow

__all__ = [
    "Arc",
    "Digraph",
    "Flow",
    "Network",
    "parse_network",
    "format_network",
    "validate_flow",
    "FlownetError",
    "InputError",
    "FlowValidationError",
    "BudgetError",
    "PreconditionError",
    "AlgorithmError",
]

__version__ = "0.1.0"
