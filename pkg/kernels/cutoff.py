"""
The smooth cutoff h: 1 on [0, 1/2], 0 on [1, inf), even, nonincreasing, C-infinity.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import quad

FD_STEP = 0.02
FD_TOL = 1e-6
MAX_ORDER = 4
# QUADPACK needs epsrel > 50 * machine eps when epsabs is 0
QUAD_RTOL = 1e-13


def _bump(u: float) -> float:
    if u <= 0.5 or u >= 1.0:
        return 0.0
    return float(np.exp(-1.0 / ((u - 0.5) * (1.0 - u))))


@lru_cache(maxsize=1)
def _bump_mass() -> float:
    return quad(_bump, 0.5, 1.0, epsabs=0.0, epsrel=QUAD_RTOL, limit=200)[0]


@lru_cache(maxsize=65536)
def _transition(t: float) -> float:
    return 1.0 - quad(_bump, 0.5, t, epsabs=0.0, epsrel=QUAD_RTOL, limit=200)[0] / _bump_mass()


def cutoff_h(t):
    """
    h(t) for a scalar or an array.

    On 1/2 < |t| < 1, h is one minus the normalized integral of the bump
    exp(-1 / ((u - 1/2)(1 - u))) from 1/2 to |t|.
    """
    a = np.abs(np.asarray(t, dtype=float))
    out = np.where(a <= 0.5, 1.0, 0.0)
    middle = (a > 0.5) & (a < 1.0)
    if np.any(middle):
        out[middle] = [_transition(float(v)) for v in a[middle]]
    return float(out) if out.ndim == 0 else out


def smoothness_witness(h: Callable, step: float = FD_STEP, max_order: int = MAX_ORDER) -> int:
    """
    Number of derivative orders k <= max_order whose centered k-th difference vanishes
    (below FD_TOL) at both junctions t = 1/2 and t = 1.
    """
    orders = 0
    for k in range(1, max_order + 1):
        offsets = (np.arange(k + 1) - k / 2.0) * step
        signs = np.array([(-1) ** (k - i) * _binomial(k, i) for i in range(k + 1)], dtype=float)
        worst = max(abs(float(signs @ np.asarray(h(c + offsets)))) / step ** k for c in (0.5, 1.0))
        if worst > FD_TOL:
            break
        orders = k
    return orders


def _binomial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


@dataclass(frozen=True)
class CutoffFunction:
    """An admissible cutoff with its certified smoothness order."""

    evaluator: Callable
    smoothness_witness: int

    def __call__(self, t):
        return self.evaluator(t)


@lru_cache(maxsize=1)
def default_cutoff() -> CutoffFunction:
    return CutoffFunction(evaluator=cutoff_h, smoothness_witness=smoothness_witness(cutoff_h))
