from .cutoff import CutoffFunction, cutoff_h, default_cutoff, smoothness_witness
from .localized import filtered_basis, phi_kernel, phi_kernel_matrix, phi_polynomial, sigma_discrete, sigma_op
from .heat import (
    christoffel_upper,
    heat_integral,
    heat_kernel,
    heat_kernel_gradient,
    heat_kernel_matrix,
    heat_level,
    heat_tail_bound,
)
from .probes import localization_report, probe_centers, sigma_norm_constant
"""kernels package exports."""


__all__ = [
    "CutoffFunction",
    "cutoff_h",
    "default_cutoff",
    "smoothness_witness",
    "filtered_basis",
    "phi_kernel",
    "phi_kernel_matrix",
    "phi_polynomial",
    "sigma_discrete",
    "sigma_op",
    "christoffel_upper",
    "heat_integral",
    "heat_kernel",
    "heat_kernel_gradient",
    "heat_kernel_matrix",
    "heat_level",
    "heat_tail_bound",
    "localization_report",
    "probe_centers",
    "sigma_norm_constant",
]
