from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from helpers import config_hash
from models.errors import UsageError

from .config import ExperimentConfig, hashed_fields
from .report import emit_report


@dataclass
class RunContext:
    """Where a command writes and how its reports are stamped."""

    config: Optional[ExperimentConfig]
    out_dir: Path
    written: List[Path] = field(default_factory=list)

    @property
    def config_hash(self) -> str:
        return config_hash(hashed_fields(self.config))

    def emit(self, name: str, result, status: str = "ok", rows=None, error=None) -> Path:
        path = emit_report(name, result, self.config_hash, self.out_dir, status=status, rows=rows, error=error)
        self.written.append(path)
        return path

    def require_config(self, command: str) -> ExperimentConfig:
        if self.config is None:
            raise UsageError(f"'{command}' needs --config")
        return self.config
