import numpy as np


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial; the stream depends only on (seed, trial)."""
    return np.random.default_rng([int(seed), int(trial)])
