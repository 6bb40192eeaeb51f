"""
Registry of built-in weight functions for density measures.

Each function maps (manifold, nodes) to density values. The "angle" of a point is
theta on the circle, the first angle on the torus and the longitude on the sphere.
"""

from typing import Callable, Dict

import numpy as np

from manifolds import GeodesicIndex, ManifoldModel
from models.errors import UsageError
from models.pydantic_models import ManifoldKind

WeightFunction = Callable[[ManifoldModel, np.ndarray], np.ndarray]


def _angle(m: ManifoldModel, nodes: np.ndarray) -> np.ndarray:
    return nodes[:, 1] if m.kind is ManifoldKind.SPHERE2 else nodes[:, 0]


def const_weight(m, nodes):
    return np.ones(nodes.shape[0])


def sin_weight(m, nodes):
    return np.sin(_angle(m, nodes))


def sin_abs_weight(m, nodes):
    return np.abs(np.sin(_angle(m, nodes)))


def jump_weight(m, nodes):
    # 2 on the first half, 1/2 on the second
    return np.where(_angle(m, nodes) < np.pi, 2.0, 0.5)


def smooth_positive_weight(m, nodes):
    return 1.5 + np.sin(_angle(m, nodes))


WEIGHT_FUNCTIONS: Dict[str, WeightFunction] = {
    "const": const_weight,
    "sin": sin_weight,
    "sin_abs": sin_abs_weight,
    "jump": jump_weight,
    "smooth_positive": smooth_positive_weight,
}


def table_weight(m: ManifoldModel, table) -> WeightFunction:
    """
    Weight function from a user table of rows [coords..., value], evaluated by nearest row.
    """
    rows = np.asarray(table, dtype=float)
    if rows.ndim != 2 or rows.shape[1] != m.coord_dim + 1 or rows.shape[0] == 0:
        raise UsageError(f"Weight table rows need {m.coord_dim} coordinate(s) plus a value")
    index = GeodesicIndex(m, rows[:, :-1])
    values = rows[:, -1]

    def lookup(_m, nodes):
        _, idx = index.nearest(nodes)
        return values[idx]

    return lookup


def get_weight_function(name: str) -> WeightFunction:
    try:
        return WEIGHT_FUNCTIONS[name]
    except KeyError:
        known = ", ".join(sorted(WEIGHT_FUNCTIONS))
        raise UsageError(f"Unknown weight function '{name}' (known: {known}, or a table)")
