"""Convex hulls of finite point sets: vertices, affine dimension, membership."""

from __future__ import annotations

import numpy as np

from .lp import linprog
from .signomial import Signomial

__all__ = [
    "affine_dimension",
    "affine_hull_basis",
    "convex_hull_vertices",
    "in_convex_hull",
    "newton_polytope",
]


def affine_hull_basis(points, tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(origin, basis)`` with orthonormal rows spanning the affine hull."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    origin = points[0]
    diffs = points - origin
    if diffs.shape[0] < 2:
        return origin, np.zeros((0, points.shape[1]))
    _, s, vt = np.linalg.svd(diffs, full_matrices=False)
    scale = max(1.0, np.abs(diffs).max())
    rank = int(np.sum(s > tol * scale))
    return origin, vt[:rank]


def affine_dimension(points, tol: float = 1e-9) -> int:
    return affine_hull_basis(points, tol)[1].shape[0]


def in_convex_hull(point, points, tol: float = 1e-9) -> bool:
    """LP test: is ``point`` a convex combination of ``points``?"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    point = np.asarray(point, dtype=float).ravel()
    k = points.shape[0]
    if k == 0:
        return False
    # minimise the L1 residual of sum lambda_i p_i = point, sum lambda = 1
    n = points.shape[1]
    A_eq = np.zeros((n + 1, k + 2 * n))
    A_eq[:n, :k] = points.T
    A_eq[:n, k : k + n] = np.eye(n)
    A_eq[:n, k + n :] = -np.eye(n)
    A_eq[n, :k] = 1.0
    b_eq = np.concatenate([point, [1.0]])
    big = 2.0 * (np.abs(points).max() + np.abs(point).max() + 1.0)
    c = np.concatenate([np.zeros(k), np.ones(2 * n)])
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=[(0.0, 1.0)] * k + [(0.0, big)] * (2 * n))
    return bool(res.success and res.fun <= tol * max(1.0, np.abs(point).max()))


def _monotone_chain(points: np.ndarray) -> np.ndarray:
    pts = sorted({tuple(p) for p in points.tolist()})
    if len(pts) <= 2:
        return np.array(pts, dtype=float)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1], dtype=float)


def convex_hull_vertices(points) -> np.ndarray:
    """Vertices of ``Conv(points)``.

    Planar inputs use Andrew's monotone chain (counter-clockwise order);
    otherwise a point is kept iff it is not a convex combination of the rest.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[0] <= 1:
        return points.copy()
    n = points.shape[1]
    if n == 1:
        return np.array([[points.min()], [points.max()]]) if points.min() < points.max() else points[:1].copy()
    if n == 2:
        return _monotone_chain(points)
    keep = [
        i
        for i in range(points.shape[0])
        if not in_convex_hull(points[i], np.delete(points, i, axis=0))
    ]
    return points[keep]


def newton_polytope(f: Signomial) -> tuple[np.ndarray, int]:
    """Vertices of the Newton polytope of ``f`` and its affine dimension."""
    if len(f) == 0:
        raise ValueError("the zero signomial has no Newton polytope")
    pts = f.exponents
    return convex_hull_vertices(pts), affine_dimension(pts)
