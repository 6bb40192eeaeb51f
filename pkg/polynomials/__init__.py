from .polynomial import (
    DiffusionPolynomial,
    basis_for,
    constant_polynomial,
    from_labels,
    random_polynomial,
    trig_polynomial,
)
from .norms import check_exponent, dense_sup_function, dense_sup_norm, gradient_norm_at, mu_integral_power, norm_p
from .inequalities import bernstein_ratio, christoffel, christoffel_band, nikolskii_ratio, product_leakage
from .io import dump_polynomial, format_polynomial, load_polynomial, parse_polynomial
"""polynomials package exports."""


__all__ = [
    "DiffusionPolynomial",
    "basis_for",
    "constant_polynomial",
    "from_labels",
    "random_polynomial",
    "trig_polynomial",
    "check_exponent",
    "dense_sup_function",
    "dense_sup_norm",
    "gradient_norm_at",
    "mu_integral_power",
    "norm_p",
    "bernstein_ratio",
    "christoffel",
    "christoffel_band",
    "nikolskii_ratio",
    "product_leakage",
    "dump_polynomial",
    "format_polynomial",
    "load_polynomial",
    "parse_polynomial",
]
