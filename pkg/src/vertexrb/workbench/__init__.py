"""Config-driven runner for the identity checks."""
from .config import ParseError, ValidationError, WorkbenchConfig, load_config, parse_config
from .registry import CHECKS, UnknownCheckError, explain_check
from .report import RunReport, run_suite
from .suites import SUITES, load_suite

__all__ = ["ParseError", "ValidationError", "WorkbenchConfig", "load_config", "parse_config", "CHECKS",
           "UnknownCheckError", "explain_check", "RunReport", "run_suite", "SUITES", "load_suite"]
