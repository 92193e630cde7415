"""Exception types shared by every flownet module; the CLI maps them to exit codes."""

from typing import Optional


class FlownetError(Exception):
    """Base class for all flownet failures."""
    exit_code: int = 1


class InputError(FlownetError):
    """Malformed input files, invalid networks or flows."""
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FlowValidationError(InputError):
    """A flow violates capacity bounds or conservation."""


class BudgetError(FlownetError):
    """An exhaustive search would exceed its configured budget."""
    exit_code = 3

    def __init__(self, message: str, estimate: Optional[int] = None, limit: Optional[int] = None):
        self.estimate = estimate
        self.limit = limit
        if estimate is not None and limit is not None:
            message = f"{message} (estimate {estimate} > limit {limit})"
        super().__init__(message)


class PreconditionError(FlownetError):
    """The input is well formed but outside an algorithm's domain (e.g. a cyclic network for tricot)."""
    exit_code = 4


class AlgorithmError(FlownetError):
    """An internal invariant did not hold."""
    exit_code = 1
