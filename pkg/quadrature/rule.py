"""
Positive quadrature rules over cell functionals.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from manifolds import ManifoldModel
from measures import AtomicMeasure
from models.pydantic_models import QuadratureSummary

from .functionals import FunctionalKind, cell_average_operator

logger = logging.getLogger(__name__)


class QuadratureMode(str, Enum):
    LP_MAXIMIN = "LP_maximin"
    NNLS = "NNLS"


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """
    Weights W_k >= 0 with sum_k W_k x_k^*(phi_j) = delta_{j0} for ell_j <= L.

    Attributes:
        points: x_k, one per cell
        cell_mu: mu(Y_k), zeros when unknown (rules loaded from file)
        partition, nu: the construction inputs; CellAverage rules need both to act as a measure
        achieved_t: maximin value min_k W_k / mu(Y_k) reached by the LP, None for NNLS
    """

    manifold: ManifoldModel
    L: float
    kind: FunctionalKind
    mode: QuadratureMode
    points: np.ndarray
    weights: np.ndarray
    cell_mu: np.ndarray
    residual: float
    achieved_t: Optional[float] = None
    partition: object = None
    nu: object = None

    @property
    def n_weights(self) -> int:
        return self.weights.shape[0]

    @property
    def min_weight_ratio(self) -> float:
        known = self.cell_mu > 0
        if not known.any():
            return float("nan")
        return float(np.min(self.weights[known] / self.cell_mu[known]))

    def as_measure(self, name: str = "quadrature") -> AtomicMeasure:
        """
        The quadrature measure tau: W_k at x_k, or for cell averages W_k spread over the
        atoms of nu in Y_k proportionally to |nu|.
        """
        if self.kind is FunctionalKind.POINT_EVALUATION:
            return AtomicMeasure(manifold=self.manifold, points=self.points, weights=self.weights, name=name)
        if self.partition is None or self.nu is None:
            logger.warning("⚠️ Cell-average rule without its partition; placing W_k at x_k")
            return AtomicMeasure(manifold=self.manifold, points=self.points, weights=self.weights, name=name)
        masses = cell_average_operator(self.partition, self.nu).T @ self.weights
        keep = masses != 0.0
        return AtomicMeasure(manifold=self.manifold, points=self.nu.nodes[keep], weights=masses[keep], name=name)

    def summary(self) -> QuadratureSummary:
        return QuadratureSummary(
            manifold=self.manifold.kind,
            L=self.L,
            kind=self.kind.value,
            mode=self.mode.value,
            n_weights=self.n_weights,
            residual=self.residual,
            min_weight_ratio=self.min_weight_ratio,
            weight_sum=float(self.weights.sum()),
            achieved_t=self.achieved_t,
        )
