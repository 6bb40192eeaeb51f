from .moments import MomentVector, moments
from .functionals import FunctionalKind, cell_average_operator, cell_functional_matrix
from .rule import QuadratureMode, QuadratureRule
from .solver import farkas_direction, refine_weights, solve_positive_quadrature
from .verify import measure_moments, quadrature_residual, sigma_reproduction_error, verify_quadrature_mz
from .io import dump_rule, format_rule, load_rule, load_rule_measure, parse_rule
"""quadrature package exports."""


__all__ = [
    "MomentVector",
    "moments",
    "FunctionalKind",
    "cell_average_operator",
    "cell_functional_matrix",
    "QuadratureMode",
    "QuadratureRule",
    "farkas_direction",
    "refine_weights",
    "solve_positive_quadrature",
    "measure_moments",
    "quadrature_residual",
    "sigma_reproduction_error",
    "verify_quadrature_mz",
    "dump_rule",
    "format_rule",
    "load_rule",
    "load_rule_measure",
    "parse_rule",
]
