from . import kernel, mz, partition, points, quad, verify_all
from .config import ExperimentConfig, apply_overrides, hashed_fields, load_config, parse_config
from .context import RunContext
from .report import emit_report, report_name, write_csv
"""commands package exports - one module per CLI subcommand."""

COMMANDS = (points, partition, mz, quad, kernel, verify_all)

__all__ = [
    "COMMANDS",
    "ExperimentConfig",
    "RunContext",
    "apply_overrides",
    "hashed_fields",
    "emit_report",
    "load_config",
    "parse_config",
    "report_name",
    "write_csv",
]
