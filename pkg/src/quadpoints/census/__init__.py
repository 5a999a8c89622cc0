"""Census driver: audits, enumerations and example reproductions as CSV/JSON reports."""
from .cli import main
from .commands import (
    COMMANDS,
    RunConfig,
    cmd_audit,
    cmd_enumerate,
    cmd_generate_points,
    cmd_thresholds,
    cmd_verify_examples,
)
from .report import Report

__all__ = [
    "COMMANDS",
    "Report",
    "RunConfig",
    "cmd_audit",
    "cmd_enumerate",
    "cmd_generate_points",
    "cmd_thresholds",
    "cmd_verify_examples",
    "main",
]
