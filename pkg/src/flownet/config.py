import os
import logging
from typing import Optional

# === Config Class ===
class Config:
    """
    Centralized configuration for the flownet package.
    Nested classes group related constants (search budgets, report files).
    """
    pass

# Top-level config constants
Config.MAX_CAPACITY: int = 2 ** 63 - 1
Config.DEBUG_CHECKS: bool = os.getenv("FLOWNET_DEBUG_CHECKS", "0") == "1"
Config.LOG_LEVEL: str = os.getenv("FLOWNET_LOG_LEVEL", "WARNING")
Config.LOG_FORMAT: str = '%(asctime)s - %(levelname)s - %(message)s'
Config.LOG_DATEFMT: str = '%Y-%m-%d %H:%M:%S'


class Budget:
    """Default limits for exhaustive searches (oracles, persistence, tricot)."""
    MAX_ARCS: int = 14
    MAX_VERTICES: int = 12
    MAX_CAP: int = 6
    MAX_STATES: int = 10_000_000
    # Relaxed size limits for checking reduction gadgets
    GADGET_MAX_ARCS: int = 96
    GADGET_MAX_VERTICES: int = 64
    GADGET_MAX_CAP: int = 64
    # Ceiling on dynamic-program states for the tricot solvers
    TRICOT_STATES: int = 50_000_000
    SAT_MAX_VARIABLES: int = 20


class Files:
    """Output locations for experiment reports."""
    REPORT_DIR: str = os.getenv("FLOWNET_REPORT_DIR", "reports")


# Attach nested classes to Config
Config.Budget = Budget
Config.Files = Files


def env_int(name: str, default: int) -> int:
    """Reads an integer environment variable, falling back to the default on bad input."""
    raw: Optional[str] = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logging.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default
    if value < 1:
        logging.warning(f"Ignoring non-positive {name}={value}, using {default}")
        return default
    return value


def state_budget() -> int:
    # Read at call time so FLOWNET_BUDGET_STATES can change between runs in one process.
    return env_int("FLOWNET_BUDGET_STATES", Config.Budget.MAX_STATES)


def tricot_budget() -> int:
    return env_int("FLOWNET_TRICOT_BUDGET", Config.Budget.TRICOT_STATES)


def debug_checks() -> bool:
    return Config.DEBUG_CHECKS or os.getenv("FLOWNET_DEBUG_CHECKS", "0") == "1"
