from .pydantic_models import (
    ManifoldKind,
    ReportModel,
    Kappa,
    BallBand,
    RegularityCertificate,
    PartitionAudit,
    KernelProbeRow,
    KernelProbeReport,
    HeatKernelValue,
    HeatIntegral,
    NikolskiiReport,
    ProductLeakage,
    MZReport,
    StrongMZReport,
    SupNormGapReport,
    CharacterizationReport,
    QuadratureSummary,
    PointSetReport,
    AcceptanceCheck,
    VerifyAllReport,
)
from .errors import (
    MZLabError,
    UsageError,
    ConfigError,
    EmptySupportError,
    ScaleOutOfRangeError,
    InsufficientQuadratureError,
    OrderShortfallError,
    TruncationError,
    DimensionCapError,
    InvariantViolation,
    SupportTooSparseError,
    NotDominantError,
    OrphanPointsError,
    ReferenceQuadratureError,
    QuadratureInfeasibleError,
)
"""models package exports - report models and the error hierarchy."""


__all__ = [
    "ManifoldKind",
    "ReportModel",
    "Kappa",
    "BallBand",
    "RegularityCertificate",
    "PartitionAudit",
    "KernelProbeRow",
    "KernelProbeReport",
    "HeatKernelValue",
    "HeatIntegral",
    "NikolskiiReport",
    "ProductLeakage",
    "MZReport",
    "StrongMZReport",
    "SupNormGapReport",
    "CharacterizationReport",
    "QuadratureSummary",
    "PointSetReport",
    "AcceptanceCheck",
    "VerifyAllReport",
    "MZLabError",
    "UsageError",
    "ConfigError",
    "EmptySupportError",
    "ScaleOutOfRangeError",
    "InsufficientQuadratureError",
    "OrderShortfallError",
    "TruncationError",
    "DimensionCapError",
    "InvariantViolation",
    "SupportTooSparseError",
    "NotDominantError",
    "OrphanPointsError",
    "ReferenceQuadratureError",
    "QuadratureInfeasibleError",
]
