from .gram import gram_matrix, mz_constants_p2
from .sampled import mz_ratio_bounds, sup_norm_gap, trial_polynomials
from .cell_integrals import cell_mu_integrals, cell_nu_integrals
from .strong import verify_strong_mz
from .characterization import characterization_roundtrip, phi_tail_mass, scale_equivalence
"""mzanalysis package exports."""


__all__ = [
    "gram_matrix",
    "mz_constants_p2",
    "mz_ratio_bounds",
    "sup_norm_gap",
    "trial_polynomials",
    "cell_mu_integrals",
    "cell_nu_integrals",
    "verify_strong_mz",
    "characterization_roundtrip",
    "phi_tail_mass",
    "scale_equivalence",
]
