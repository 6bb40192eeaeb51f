from .config_hash import config_hash
from .format_level import format_level
from .parallel_map import parallel_map
from .trial_rng import trial_rng
"""helpers package exports."""


__all__ = ["config_hash", "format_level", "parallel_map", "trial_rng"]
