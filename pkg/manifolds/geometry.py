"""
Geodesic geometry on the model manifolds: canonical points, distances, ball measures
and kd-tree backed neighbour queries.

Points are float arrays of shape (n, coord_dim): circle [theta], sphere
[colatitude, longitude], torus [a, b].
"""

import numpy as np
from scipy import sparse
from scipy.spatial import cKDTree

from models.errors import UsageError
from models.pydantic_models import ManifoldKind
from src.config import BALL_ATOL, BALL_RTOL

from .model import ManifoldModel

TWO_PI = 2.0 * np.pi

# Neighbour counts tried by batched radius queries before falling back to ball lists
KNN_START = 8
KNN_CAP = 256


def _wrap(a: np.ndarray) -> np.ndarray:
    w = np.mod(a, TWO_PI)
    return np.where(w >= TWO_PI, 0.0, w)


def sphere_to_unit(points: np.ndarray) -> np.ndarray:
    theta, phi = points[:, 0], points[:, 1]
    s = np.sin(theta)
    return np.stack([s * np.cos(phi), s * np.sin(phi), np.cos(theta)], axis=1)


def sphere_from_unit(u: np.ndarray) -> np.ndarray:
    rho = np.hypot(u[:, 0], u[:, 1])
    theta = np.arctan2(rho, u[:, 2])
    phi = np.where(rho > 0.0, _wrap(np.arctan2(u[:, 1], u[:, 0])), 0.0)
    return np.stack([theta, phi], axis=1)


def canonicalize(m: ManifoldModel, points: np.ndarray) -> np.ndarray:
    """Reduce coordinates to the canonical range of m."""
    pts = np.array(points, dtype=float, copy=True)
    if m.kind is not ManifoldKind.SPHERE2:
        return _wrap(pts)

    theta = pts[:, 0]
    if np.any((theta < 0.0) | (theta > np.pi)):
        return sphere_from_unit(sphere_to_unit(pts))
    pts[:, 1] = _wrap(pts[:, 1])
    poles = (theta == 0.0) | (theta == np.pi)
    pts[poles, 1] = 0.0
    return pts


def as_points(m: ManifoldModel, x) -> np.ndarray:
    """
    Coerce x into a canonical (n, coord_dim) array.

    A 1-D array is a list of angles on the circle and a single point elsewhere.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1) if m.coord_dim == 1 else arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != m.coord_dim:
        raise UsageError(
            f"Points for {m.kind.value} need {m.coord_dim} coordinate(s), got shape {arr.shape}"
        )
    return canonicalize(m, arr)


def _circle_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = np.mod(np.abs(a - b), TWO_PI)
    return np.minimum(diff, TWO_PI - diff)


def _distance(m: ManifoldModel, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # x, y broadcast against each other along leading axes; last axis = coordinates
    if m.kind is ManifoldKind.CIRCLE:
        return _circle_distance(x[..., 0], y[..., 0])
    if m.kind is ManifoldKind.TORUS2:
        return np.hypot(_circle_distance(x[..., 0], y[..., 0]),
                        _circle_distance(x[..., 1], y[..., 1]))

    def unit(p):
        s = np.sin(p[..., 0])
        return np.stack([s * np.cos(p[..., 1]), s * np.sin(p[..., 1]), np.cos(p[..., 0])], axis=-1)

    u, v = unit(x), unit(y)
    cross = np.linalg.norm(np.cross(u, v), axis=-1)
    return np.arctan2(cross, np.sum(u * v, axis=-1))


def geodesic_distance(m: ManifoldModel, x, y):
    """
    Geodesic distance between points, elementwise over equally sized point lists.

    Args:
        m: the manifold
        x, y: points (single points or arrays of equal length)

    Returns:
        float for single points, else an array of distances
    """
    X, Y = as_points(m, x), as_points(m, y)
    d = _distance(m, X, Y)
    return float(d[0]) if d.size == 1 else d


def pairwise_distances(m: ManifoldModel, X, Y) -> np.ndarray:
    """Matrix of distances rho(X_i, Y_j)."""
    X, Y = as_points(m, X), as_points(m, Y)
    return _distance(m, X[:, None, :], Y[None, :, :])


def ball_measure(m: ManifoldModel, x, r):
    """
    mu(B(x, r)) for the normalized volume measure.

    The value does not depend on x (all three manifolds are homogeneous). On the torus
    the disk is clipped against the fundamental square once r exceeds pi.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise UsageError(f"Ball radius must be >= 0, got {r}")

    if m.kind is ManifoldKind.CIRCLE:
        out = np.minimum(1.0, r_arr / np.pi)
    elif m.kind is ManifoldKind.SPHERE2:
        out = np.where(r_arr >= np.pi, 1.0, (1.0 - np.cos(np.minimum(r_arr, np.pi))) / 2.0)
    else:
        a = np.pi
        rc = np.clip(r_arr, a, a * np.sqrt(2.0))
        segment = rc ** 2 * np.arccos(a / rc) - a * np.sqrt(rc ** 2 - a ** 2)
        clipped = (np.pi * rc ** 2 - 4.0 * segment) / (4.0 * a ** 2)
        out = np.where(r_arr <= a, r_arr ** 2 / (4.0 * np.pi),
                       np.where(r_arr >= a * np.sqrt(2.0), 1.0, clipped))
    return float(out) if out.ndim == 0 else out


def random_points(m: ManifoldModel, n: int, rng: np.random.Generator) -> np.ndarray:
    """n points drawn from mu."""
    if m.kind is ManifoldKind.CIRCLE:
        return canonicalize(m, rng.uniform(0.0, TWO_PI, size=(n, 1)))
    if m.kind is ManifoldKind.TORUS2:
        return canonicalize(m, rng.uniform(0.0, TWO_PI, size=(n, 2)))
    theta = np.arccos(1.0 - 2.0 * rng.uniform(size=n))
    phi = rng.uniform(0.0, TWO_PI, size=n)
    return canonicalize(m, np.stack([theta, phi], axis=1))


def tangent_frame(points: np.ndarray):
    """Unit vectors and an orthonormal tangent frame (e_colatitude, e_longitude) on the sphere."""
    theta, phi = points[:, 0], points[:, 1]
    u = sphere_to_unit(points)
    e1 = np.stack([np.cos(theta) * np.cos(phi), np.cos(theta) * np.sin(phi), -np.sin(theta)], axis=1)
    e2 = np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)], axis=1)
    return u, e1, e2


def sphere_exp(u: np.ndarray, e: np.ndarray, h: float) -> np.ndarray:
    """Follow the great circle from u in unit tangent direction e for arc length h."""
    return sphere_from_unit(np.cos(h) * u + np.sin(h) * e)


def closed_radius(r: float) -> float:
    return r * (1.0 + BALL_RTOL) + BALL_ATOL


def open_radius(r: float) -> float:
    return r * (1.0 - BALL_RTOL)


class GeodesicIndex:
    """
    Neighbour queries on a fixed point array under the geodesic metric.

    Circle and torus use a periodic kd-tree on the angles, so tree distances are geodesic
    distances. The sphere uses unit vectors, where chord length is monotone in rho.
    """

    def __init__(self, m: ManifoldModel, points):
        self.manifold = m
        self.points = as_points(m, points)
        self._tree = cKDTree(self._embed(self.points), boxsize=self._boxsize())

    def __len__(self) -> int:
        return self.points.shape[0]

    def _boxsize(self):
        if self.manifold.kind is ManifoldKind.SPHERE2:
            return None
        return np.full(self.manifold.coord_dim, TWO_PI)

    def _embed(self, pts: np.ndarray) -> np.ndarray:
        if self.manifold.kind is ManifoldKind.SPHERE2:
            return sphere_to_unit(pts)
        return pts

    def _tree_radius(self, r: float) -> float:
        if self.manifold.kind is ManifoldKind.SPHERE2:
            return 2.0 * np.sin(r / 2.0)
        return r

    def _geodesic(self, tree_dist: np.ndarray) -> np.ndarray:
        if self.manifold.kind is ManifoldKind.SPHERE2:
            return 2.0 * np.arcsin(np.clip(tree_dist / 2.0, 0.0, 1.0))
        return tree_dist

    def nearest(self, query):
        """Distance to, and index of, the nearest indexed point for each query point."""
        if len(self) == 0:
            raise UsageError("Nearest-point query on an empty point set")
        q = as_points(self.manifold, query)
        dist, idx = self._tree.query(self._embed(q), k=1)
        return self._geodesic(np.asarray(dist, dtype=float)), np.asarray(idx, dtype=np.int64)

    def nearest_k(self, query, k: int):
        """Distances and indices of the k nearest indexed points, shape (n, k)."""
        q = as_points(self.manifold, query)
        dist, idx = self._tree.query(self._embed(q), k=k)
        dist = np.asarray(dist, dtype=float).reshape(q.shape[0], k)
        return self._geodesic(dist), np.asarray(idx, dtype=np.int64).reshape(q.shape[0], k)

    def _query_radius(self, r: float, closed: bool):
        eff = closed_radius(r) if closed else open_radius(r)
        if eff >= self.manifold.diameter:
            return None
        return self._tree_radius(eff)

    def ball_lists(self, query, r: float, closed: bool = True) -> list:
        """Indices of indexed points in B(q, r) for every query point q."""
        q = as_points(self.manifold, query)
        tr = self._query_radius(r, closed)
        if tr is None:
            everything = np.arange(len(self))
            return [everything for _ in range(q.shape[0])]
        lists = self._tree.query_ball_point(self._embed(q), tr, return_sorted=False)
        return [np.asarray(item, dtype=np.int64) for item in lists]

    def pairs_within(self, query, r: float, closed: bool = True):
        """
        (rows, cols) of every pair with rho(query_rows, point_cols) <= r (< r when open).

        Batched k-nearest queries cut off at the radius; k doubles only for rows whose
        k-th neighbour is still inside. Rows still full at KNN_CAP use ball lists.
        """
        q = as_points(self.manifold, query)
        n = q.shape[0]
        tr = self._query_radius(r, closed)
        if tr is None or n == 0 or len(self) == 0:
            rows = np.repeat(np.arange(n, dtype=np.int64), len(self))
            return rows, np.tile(np.arange(len(self), dtype=np.int64), n)

        embedded = self._embed(q)
        cutoff = tr * (1.0 + 1e-9) + 1e-15
        rows, cols = [], []
        todo = np.arange(n, dtype=np.int64)
        k = min(KNN_START, len(self))
        while todo.size:
            dist, idx = self._tree.query(embedded[todo], k=k, distance_upper_bound=cutoff)
            dist, idx = dist.reshape(todo.size, k), idx.reshape(todo.size, k)
            hit = dist <= tr
            full = hit[:, -1] if k < len(self) else np.zeros(todo.size, dtype=bool)
            r_hit, c_hit = np.nonzero(hit & ~full[:, None])
            rows.append(todo[r_hit])
            cols.append(idx[r_hit, c_hit].astype(np.int64))
            todo = todo[full]
            if todo.size and k >= KNN_CAP:
                lists = self._tree.query_ball_point(embedded[todo], tr, return_sorted=False)
                lengths = np.fromiter((len(item) for item in lists), dtype=np.int64, count=len(lists))
                rows.append(np.repeat(todo, lengths))
                cols.append(np.concatenate([np.asarray(item, dtype=np.int64) for item in lists]))
                break
            k = min(2 * k, len(self))
        return np.concatenate(rows), np.concatenate(cols)

    def neighbourhood(self, query, r: float, closed: bool = True) -> sparse.csr_matrix:
        """
        Sparse 0/1 matrix N with N[i, j] = 1 iff rho(query_i, point_j) <= r
        (strictly < r when closed is False). Column indices are sorted within each row.
        """
        n = as_points(self.manifold, query).shape[0]
        rows, cols = self.pairs_within(query, r, closed=closed)
        data = np.ones(rows.shape[0], dtype=float)
        matrix = sparse.csr_matrix((data, (rows, cols)), shape=(n, len(self)))
        matrix.sort_indices()
        return matrix

    def count_within(self, query, r: float, closed: bool = True) -> np.ndarray:
        q = as_points(self.manifold, query)
        tr = self._query_radius(r, closed)
        if tr is None:
            return np.full(q.shape[0], len(self), dtype=np.int64)
        counts = self._tree.query_ball_point(self._embed(q), tr, return_length=True)
        return np.asarray(counts, dtype=np.int64)
