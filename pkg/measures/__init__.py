from .signed_measure import (
    AtomicMeasure,
    BallAverageMeasure,
    DensityMeasure,
    SignedMeasure,
    zero_measure,
)
from .weights import WEIGHT_FUNCTIONS, get_weight_function, table_weight
from .regularity import (
    ball_mass,
    ball_masses,
    dominance_norm,
    reconciliation_constant,
    regularity_norm,
    support_mesh_norm,
    total_variation,
)
from .examples import (
    cap_average_measure,
    discrete_set_measure,
    uniform_measure,
    weighted_density_measure,
)
from .io import dump_measure, load_measure, parse_measure
"""measures package exports."""


__all__ = [
    "AtomicMeasure",
    "BallAverageMeasure",
    "DensityMeasure",
    "SignedMeasure",
    "zero_measure",
    "WEIGHT_FUNCTIONS",
    "get_weight_function",
    "table_weight",
    "ball_mass",
    "ball_masses",
    "dominance_norm",
    "reconciliation_constant",
    "regularity_norm",
    "support_mesh_norm",
    "total_variation",
    "cap_average_measure",
    "discrete_set_measure",
    "uniform_measure",
    "weighted_density_measure",
    "dump_measure",
    "load_measure",
    "parse_measure",
]
