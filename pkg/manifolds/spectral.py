"""
Real orthonormal eigenbases (w.r.t. the probability measure) with frequencies
ell_k = max(1, sqrt(lambda_k)).
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Tuple

import numpy as np

from models.errors import UsageError
from models.pydantic_models import ManifoldKind

from .geometry import as_points, sphere_exp, tangent_frame
from .model import ManifoldModel

try:
    from scipy.special import sph_harm_y
except ImportError:  # scipy < 1.15
    from scipy.special import sph_harm as _legacy_sph_harm

    def sph_harm_y(n, m, theta, phi):
        return _legacy_sph_harm(m, n, phi, theta)


SQRT2 = np.sqrt(2.0)
FD_STEP = 1e-5
ELL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """
    Enumerated eigenpairs (ell_k, phi_k), ordered by nondecreasing ell.

    Labels identify each function:
        circle: (k, "1" | "c" | "s") for 1, sqrt2 cos k.theta, sqrt2 sin k.theta
        sphere: (l, m) for the real harmonic of degree l and order m
        torus:  ((k1, t1), (k2, t2)), a product of two circle factors
    """

    manifold: ManifoldModel
    ells: np.ndarray
    labels: Tuple
    L_max: float

    @property
    def dim(self) -> int:
        return len(self.labels)

    def truncate(self, L: float) -> "SpectralBasis":
        """Entries with ell <= L."""
        if L > self.L_max + ELL_TOL:
            raise UsageError(f"Basis truncated at L={self.L_max} cannot cover L={L}")
        count = int(np.searchsorted(self.ells, L + ELL_TOL, side="right"))
        return self.head(count, L)

    def head(self, count: int, L_max: float = None) -> "SpectralBasis":
        """The first `count` entries."""
        return SpectralBasis(
            manifold=self.manifold,
            ells=self.ells[:count],
            labels=self.labels[:count],
            L_max=self.L_max if L_max is None else L_max,
        )

    def index_of(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UsageError(f"Label {label} not in basis (L_max={self.L_max})")

    @cached_property
    def _codes(self):
        kind = self.manifold.kind
        if kind is ManifoldKind.CIRCLE:
            return (np.array([k for k, _ in self.labels], dtype=float),
                    np.array([t for _, t in self.labels]))
        if kind is ManifoldKind.SPHERE2:
            return (np.array([l for l, _ in self.labels], dtype=np.int64),
                    np.array([m for _, m in self.labels], dtype=np.int64))
        return (np.array([a[0] for a, _ in self.labels], dtype=float),
                np.array([a[1] for a, _ in self.labels]),
                np.array([b[0] for _, b in self.labels], dtype=float),
                np.array([b[1] for _, b in self.labels]))

    def evaluate(self, points) -> np.ndarray:
        """Matrix of phi_k(x_i), shape (n, dim)."""
        pts = as_points(self.manifold, points)
        kind = self.manifold.kind
        if kind is ManifoldKind.CIRCLE:
            freq, code = self._codes
            return _trig_factor(freq, code, pts[:, 0])[0]
        if kind is ManifoldKind.TORUS2:
            k1, t1, k2, t2 = self._codes
            return _trig_factor(k1, t1, pts[:, 0])[0] * _trig_factor(k2, t2, pts[:, 1])[0]
        return self._sphere_values(pts)

    def _sphere_values(self, pts: np.ndarray) -> np.ndarray:
        degree, order = self._codes
        y = sph_harm_y(degree[None, :], np.abs(order)[None, :], pts[:, 0:1], pts[:, 1:2])
        real = np.where(order[None, :] == 0, y.real,
                        np.where(order[None, :] > 0, SQRT2 * y.real, SQRT2 * y.imag))
        return np.sqrt(4.0 * np.pi) * real

    def gradient(self, points) -> np.ndarray:
        """
        Gradients of every phi_k in an orthonormal tangent frame, shape (n, dim, tdim).

        Circle and torus are analytic. The sphere uses central differences along geodesics
        in the (colatitude, longitude) frame.
        """
        pts = as_points(self.manifold, points)
        kind = self.manifold.kind
        if kind is ManifoldKind.CIRCLE:
            freq, code = self._codes
            return _trig_factor(freq, code, pts[:, 0])[1][:, :, None]
        if kind is ManifoldKind.TORUS2:
            k1, t1, k2, t2 = self._codes
            f1, g1 = _trig_factor(k1, t1, pts[:, 0])
            f2, g2 = _trig_factor(k2, t2, pts[:, 1])
            return np.stack([g1 * f2, f1 * g2], axis=-1)

        u, e1, e2 = tangent_frame(pts)
        parts = []
        for e in (e1, e2):
            plus = self._sphere_values(sphere_exp(u, e, FD_STEP))
            minus = self._sphere_values(sphere_exp(u, e, -FD_STEP))
            parts.append((plus - minus) / (2.0 * FD_STEP))
        return np.stack(parts, axis=-1)


def _trig_factor(freq: np.ndarray, code: np.ndarray, angle: np.ndarray):
    """Values and derivatives of the circle factors at the given angles."""
    arg = angle[:, None] * freq[None, :]
    cos, sin = np.cos(arg), np.sin(arg)
    is_c, is_s = (code == "c")[None, :], (code == "s")[None, :]
    values = np.where(is_c, SQRT2 * cos, np.where(is_s, SQRT2 * sin, 1.0))
    derivs = np.where(is_c, -SQRT2 * freq * sin, np.where(is_s, SQRT2 * freq * cos, 0.0))
    return values, derivs


def _circle_labels(L: float):
    labels = [(0, "1")]
    for k in range(1, int(np.floor(L + ELL_TOL)) + 1):
        labels += [(k, "c"), (k, "s")]
    ells = [max(1.0, float(k)) for k, _ in labels]
    return labels, ells


def _sphere_labels(L: float):
    labels, ells = [], []
    degree = 0
    while max(1.0, np.sqrt(degree * (degree + 1))) <= L + ELL_TOL:
        ell = max(1.0, np.sqrt(degree * (degree + 1)))
        for order in range(-degree, degree + 1):
            labels.append((degree, order))
            ells.append(ell)
        degree += 1
    return labels, ells


def _torus_labels(L: float):
    top = int(np.floor(L + ELL_TOL))
    labels, ells = [], []
    for k1 in range(top + 1):
        for k2 in range(top + 1):
            norm = np.hypot(k1, k2)
            if norm > L + ELL_TOL:
                continue
            for t1 in (("1",) if k1 == 0 else ("c", "s")):
                for t2 in (("1",) if k2 == 0 else ("c", "s")):
                    labels.append(((k1, t1), (k2, t2)))
                    ells.append(max(1.0, norm))
    return labels, ells


@lru_cache(maxsize=64)
def eigen_system(m: ManifoldModel, L: float) -> SpectralBasis:
    """
    All eigenpairs with ell_k <= L.

    Args:
        m: the manifold
        L: truncation level, at least 1

    Returns:
        SpectralBasis ordered by nondecreasing ell, phi_0 = 1 first
    """
    if L < 1:
        raise UsageError(f"eigen_system needs L >= 1, got {L}")

    builders = {
        ManifoldKind.CIRCLE: _circle_labels,
        ManifoldKind.SPHERE2: _sphere_labels,
        ManifoldKind.TORUS2: _torus_labels,
    }
    labels, ells = builders[m.kind](float(L))
    ells = np.asarray(ells, dtype=float)
    order = np.argsort(ells, kind="stable")
    return SpectralBasis(
        manifold=m,
        ells=ells[order],
        labels=tuple(labels[i] for i in order),
        L_max=float(L),
    )
