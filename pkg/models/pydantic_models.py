from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import UsageError


class ManifoldKind(str, Enum):
    """The built-in model manifolds."""

    CIRCLE = "circle"
    SPHERE2 = "sphere2"
    TORUS2 = "torus2"


class ReportModel(BaseModel):
    """Base for every record written to disk; infinities serialize as strings."""

    model_config = ConfigDict(ser_json_inf_nan="strings")


class Kappa(ReportModel):
    """Ball-growth and heat-kernel constants of a manifold."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="strings")

    kappa1: float = Field(description="Analytic bound in mu(B(x,r)) <= kappa1 r^alpha")
    kappa2: Optional[float] = Field(default=None, description="Fitted Gaussian upper-bound amplitude")
    kappa3: Optional[float] = Field(default=None, description="Fitted Gaussian upper-bound rate")
    kappa4: Optional[float] = Field(default=None, description="Fitted diagonal lower bound")


class BallBand(ReportModel):
    """Observed band of mu(B(x,r)) / r^alpha, plus the doubling constant."""

    c_lo: float
    c_hi: float
    doubling: Optional[float] = None
    samples: int


class RegularityCertificate(ReportModel):
    """Probe-grid estimates of the regularity and dominance norms at scale d."""

    d: float
    R_norm: Optional[float] = Field(default=None, description="max |nu|(B(x,d)) / d^alpha over centers")
    D_norm: Optional[float] = Field(default=None, description="(min |nu|(B(x,d)) / d^alpha)^-1, inf when flagged")
    dominance_infinite: bool = Field(default=False, description="Some probed ball has zero |nu|-mass")
    n_centers: int
    center_source: str
    grid_resolution: Optional[float] = None


class PartitionAudit(ReportModel):
    """Result of checking the partition invariants on an audit grid."""

    n_cells: int
    n_audit_points: int
    covered: bool
    centers_in_cells: bool
    containment_ratio: float = Field(description="max rho(p, x_k) / d over audit points p in Y_k")
    containment_bound: float = 81.0
    b_lo: float
    b_hi: float
    nu_positive: bool
    nu_lower_constant: float = Field(description="min |nu|(Y_k) / min |nu|(B(x, d/4)) over base centers")
    separation_half: float
    mesh_norm: float
    ok: bool


class KernelProbeRow(ReportModel):
    L: float
    sup_l1: float
    c_by_S: Dict[str, float]
    christoffel_lo: float
    christoffel_hi: float
    beta_hat: float


class KernelProbeReport(ReportModel):
    """Localization and heat-kernel constants fitted over probe grids."""

    manifold: ManifoldKind
    S_values: List[int]
    rows: List[KernelProbeRow]
    kappa2: float
    kappa3: float
    kappa4: float
    gaussian_violation_rate: float
    heat_times: List[float]
    gradient_envelope: float
    gradient_method: str
    sigma_norm: Optional[float] = Field(default=None, description="c with ||sigma_L f||_p <= c ||f||_p")


class HeatKernelValue(ReportModel):
    value: float
    truncation_level: int
    tail_bound: float


class HeatIntegral(ReportModel):
    raw: float = Field(description="integral of K_t(x, .) against mu, equals exp(-t)")
    rescaled: float = Field(description="exp(t) times the raw value")
    t: float


class NikolskiiReport(ReportModel):
    p: float
    r: float
    Ls: List[float]
    ratios: List[float]
    extremal_ratios: List[float]
    slope: Optional[float]
    claimed_slope: float
    raw_integrals: bool = Field(default=False, description="p < 1: quantities are raw integrals, not norms")


class ProductLeakage(ReportModel):
    l2: float = Field(description="relative L2 energy of QR outside Pi_{A*L}")
    grid_inf: float = Field(description="relative grid sup of the same residual")


class MZReport(ReportModel):
    """Two-sided MZ constants for one (measure, L, p)."""

    manifold: ManifoldKind
    L: float
    p: float
    measure_id: str
    method: str = Field(description="GramExact_p2 or Sampled")
    c1: float
    c2: float
    eta: Optional[float] = None
    trials: int = 0
    seed: Optional[int] = None
    fitted_constants: Dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_constants(self):
        if not self.c1 >= 0.0:
            raise UsageError(f"MZ lower constant must be >= 0, got c1={self.c1}")
        if self.c1 > self.c2 * (1.0 + 1e-12):
            raise UsageError(f"MZ constants out of order: c1={self.c1} > c2={self.c2}")
        if self.method == "GramExact_p2" and self.p != 2.0:
            raise UsageError(f"GramExact_p2 applies to p = 2 only, got p={self.p}")
        return self


class StrongMZReport(ReportModel):
    L: float
    p: float
    d: float
    Ld: float
    eta_observed: float = Field(description="cell-wise discretization error, worst over trials")
    eta_pointwise: Optional[float] = None
    gradient_overlap: Optional[float] = None
    trials: int
    seed: int


class SupNormGapReport(ReportModel):
    gap: float
    mesh_times_L: float
    trials: int


class CharacterizationReport(ReportModel):
    """Round trip between regularity/dominance norms and measured MZ constants."""

    L: float
    p: float
    R_ratio: float = Field(description="R_norm(nu) / R_norm(mu) at d = 1/L")
    D_ratio: Optional[float] = Field(description="D_norm(nu) / D_norm(mu) at d = c4/L, None when infinite")
    dominance_infinite: bool
    c1: float
    c2: float
    upper_constant: float = Field(description="c2 / R_ratio")
    regularity_constant: float = Field(description="R_ratio / c2")
    lower_constant: Optional[float] = Field(description="1 / (c1 D_ratio)")
    dominance_constant: Optional[float] = Field(default=None, description="c1 D_ratio, the converse of lower_constant")
    converse_constants: Dict[str, float] = Field(default_factory=dict)
    converse_scales: Dict[str, float] = Field(default_factory=dict)
    phi_tail: Dict[str, float] = Field(default_factory=dict)


class QuadratureSummary(ReportModel):
    manifold: ManifoldKind
    L: float
    kind: str
    mode: str
    n_weights: int
    residual: float
    min_weight_ratio: float
    weight_sum: float
    achieved_t: Optional[float] = None


class PointSetReport(ReportModel):
    n_points: int
    eps: float
    n_selected: int
    mesh_norm: float = Field(description="delta of the selected subset on a probe grid")
    separation: float = Field(description="q of the selected subset")
    overlap_radius: float
    overlap_count: int


class AcceptanceCheck(ReportModel):
    name: str
    passed: bool
    seconds: float
    details: Dict[str, Any] = Field(default_factory=dict)
    error: Optional[str] = None


class VerifyAllReport(ReportModel):
    checks: List[AcceptanceCheck]
    passed: int
    failed: int
