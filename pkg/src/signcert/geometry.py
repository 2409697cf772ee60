"""Simplices, negative vertex cones and the simplex constructions that turn a
signomial into a convex one after a monomial change of variables.

For an n-simplex with vertices ``mu_0..mu_n`` the negative vertex cone at
``mu_k`` is the set of affine combinations whose barycentric coordinates are
``<= 0`` everywhere except at ``k``.  If the negative exponents sit inside
the simplex and the positive ones inside the union of these cones, mapping
the simplex onto the standard simplex yields a convex signomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .polytope import in_convex_hull
from .separation import classify_strictness, Strictness, very_strict_basis
from .signomial import AffineMap, Signomial, signed_support

__all__ = [
    "BARY_TOL",
    "ConvexityReport",
    "Hyperplane",
    "SimplexCheck",
    "SimplexError",
    "SimplexWitness",
    "barycentric",
    "check_simplex",
    "convex_by_term_rules",
    "facet_cone_membership",
    "negative_cone_membership",
    "normalize_to_standard",
    "simplex_from_halfspaces",
    "simplex_from_nonstrict_family",
    "simplex_from_very_strict",
]

BARY_TOL = 1e-9
_VOLUME_TOL = 1e-12
_NOISE = 1e-13


class SimplexError(ValueError):
    """A simplex construction or validation failed."""


@dataclass(frozen=True)
class Hyperplane:
    """``{mu : normal . mu == offset}``; its negative side is ``<= offset``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        w = np.asarray(self.normal, dtype=float).ravel().copy()
        if not np.linalg.norm(w) > 0:
            raise ValueError("hyperplane normal must be nonzero")
        w.setflags(write=False)
        object.__setattr__(self, "normal", w)
        object.__setattr__(self, "offset", float(self.offset))

    def value(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.normal - self.offset

    def to_dict(self) -> dict:
        return {"normal": self.normal.tolist(), "offset": self.offset}


@dataclass(frozen=True)
class SimplexWitness:
    """An n-simplex with its facets; facet ``k`` is opposite vertex ``k`` and
    the simplex is the intersection of the facets' negative sides."""

    vertices: np.ndarray
    facets: tuple[Hyperplane, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.vertices.shape[1]

    @classmethod
    def from_vertices(cls, vertices) -> "SimplexWitness":
        V = np.atleast_2d(np.asarray(vertices, dtype=float)).copy()
        n = V.shape[1]
        if V.shape[0] != n + 1:
            raise SimplexError(f"an {n}-simplex needs {n + 1} vertices, got {V.shape[0]}")
        edges = V[1:] - V[0]
        scale = max(1.0, np.abs(edges).max())
        if abs(np.linalg.det(edges)) <= _VOLUME_TOL * scale**n:
            raise SimplexError("vertices are affinely dependent")
        facets = []
        for k in range(n + 1):
            others = np.delete(V, k, axis=0)
            if n == 1:
                w = np.array([1.0])
            else:
                w = np.linalg.svd(others[1:] - others[0])[2][-1]
            off = float(w @ others[0])
            if w @ V[k] > off:
                w, off = -w, -off
            facets.append(Hyperplane(w, off))
        V.setflags(write=False)
        return cls(V, tuple(facets))

    def to_dict(self) -> dict:
        return {"vertices": self.vertices.tolist(), "facets": [h.to_dict() for h in self.facets]}


def barycentric(P: SimplexWitness, alpha) -> np.ndarray:
    """Affine coordinates of ``alpha`` with respect to the vertices of ``P``."""
    alpha = np.asarray(alpha, dtype=float).ravel()
    A = np.vstack([P.vertices.T, np.ones(P.n + 1)])
    try:
        return np.linalg.solve(A, np.r_[alpha, 1.0])
    except np.linalg.LinAlgError as exc:
        raise SimplexError("degenerate simplex") from exc


def negative_cone_membership(P: SimplexWitness, alpha, tol: float = BARY_TOL) -> int | None:
    """Index ``k`` with ``alpha`` in the negative vertex cone at vertex ``k``,
    decided from barycentric signs; ``None`` if ``alpha`` lies in no cone."""
    lam = barycentric(P, alpha)
    k = int(np.argmax(lam))
    others = np.delete(lam, k)
    return k if np.all(others <= tol) else None


def facet_cone_membership(P: SimplexWitness, alpha, tol: float = BARY_TOL) -> int | None:
    """Same question as :func:`negative_cone_membership`, answered from the
    facet inequalities: ``alpha`` is in the cone at ``k`` iff it lies on the
    outer (closed) side of every facet through vertex ``k``."""
    alpha = np.asarray(alpha, dtype=float).ravel()
    outside = np.array([h.value(alpha) >= -tol for h in P.facets])
    for k in range(P.n + 1):
        if np.all(np.delete(outside, k)):
            return k
    return None


def simplex_from_halfspaces(planes, tol: float = 1e-9) -> SimplexWitness:
    """Intersect ``n + 1`` half-spaces ``normal . mu <= offset``.

    Checks that every ``n`` of the normals are linearly independent and that
    each vertex (the meet of ``n`` planes) lies strictly inside the remaining
    half-space.  Violations raise :class:`SimplexError` naming the subset.
    """
    planes = [p if isinstance(p, Hyperplane) else Hyperplane(*p) for p in planes]
    n = planes[0].normal.size
    if len(planes) != n + 1:
        raise SimplexError(f"need {n + 1} half-spaces in dimension {n}, got {len(planes)}")
    W = np.array([p.normal for p in planes])
    b = np.array([p.offset for p in planes])
    verts = np.zeros((n + 1, n))
    for i in range(n + 1):
        idx = [j for j in range(n + 1) if j != i]
        sub = W[idx]
        s = np.linalg.svd(sub, compute_uv=False)
        if s[-1] <= tol * max(1.0, s[0]):
            raise SimplexError(f"normals {idx} are linearly dependent")
        verts[i] = np.linalg.solve(sub, b[idx])
    for i in range(n + 1):
        gap = b[i] - W[i] @ verts[i]
        scale = max(1.0, np.abs(verts).max()) * np.linalg.norm(W[i])
        if not gap > tol * scale:
            idx = [j for j in range(n + 1) if j != i]
            raise SimplexError(f"the meet of planes {idx} is not strictly inside half-space {i}")
    verts.setflags(write=False)
    return SimplexWitness(verts, tuple(planes))


@dataclass(frozen=True)
class SimplexCheck:
    """Result of testing ``sigma_-(f) in P`` and ``sigma_+(f) in P^-``."""

    negatives_inside: bool
    positive_cones: list[int | None]
    marginal: bool

    @property
    def valid(self) -> bool:
        return self.negatives_inside and all(k is not None for k in self.positive_cones)

    def violations(self) -> list[str]:
        out = []
        if not self.negatives_inside:
            out.append("a negative exponent lies outside the simplex")
        for i, k in enumerate(self.positive_cones):
            if k is None:
                out.append(f"positive exponent #{i} lies in no negative vertex cone")
        return out


def check_simplex(f: Signomial, P: SimplexWitness, tol: float = BARY_TOL) -> SimplexCheck:
    s = signed_support(f)
    if P.n != f.n:
        raise SimplexError("simplex and signomial dimensions differ")
    inside = True
    marginal = False
    for beta in s.negative:
        lam = barycentric(P, beta)
        inside &= bool(np.all(lam >= -tol))
        # accepted only thanks to the tolerance
        marginal |= bool(np.any((lam < -_NOISE) & (lam >= -tol)))
    cones = []
    for alpha in s.positive:
        k = negative_cone_membership(P, alpha, tol)
        cones.append(k)
        if k is not None:
            lam = np.delete(barycentric(P, alpha), k)
            marginal |= bool(np.any((lam > _NOISE) & (lam <= tol)))
    return SimplexCheck(inside, cones, marginal)


def normalize_to_standard(P: SimplexWitness) -> AffineMap:
    """Affine map sending ``mu_0`` to the origin and ``mu_i`` to ``e_i``."""
    D = (P.vertices[1:] - P.vertices[0]).T  # columns mu_i - mu_0
    try:
        M = np.linalg.inv(D)
    except np.linalg.LinAlgError as exc:
        raise SimplexError("degenerate simplex") from exc
    return AffineMap(M, -M @ P.vertices[0])


# --------------------------------------------------------------- convexity


@dataclass(frozen=True)
class ConvexityReport:
    is_convex_by_rules: bool
    rules: list[str | None]  # per term, in the signomial's term order

    def to_dict(self) -> dict:
        return {"is_convex_by_rules": self.is_convex_by_rules, "rules": self.rules}


def convex_by_term_rules(f: Signomial, tol: float = BARY_TOL) -> ConvexityReport:
    """Sufficient term-wise convexity test.

    Positive terms qualify when all exponents are ``<= 0`` ("a_i"), or all
    but one are ``<= 0`` and the exponent sum is ``>= 1`` ("a_ii").  Negative
    terms qualify when all exponents are ``>= 0`` with sum ``<= 1`` ("b").
    """
    rules: list[str | None] = []
    for c, mu in zip(f.coefficients, f.exponents):
        if c > 0:
            if np.all(mu <= tol):
                rules.append("a_i")
            elif np.sum(mu > tol) == 1 and mu.sum() >= 1 - tol:
                rules.append("a_ii")
            else:
                rules.append(None)
        else:
            rules.append("b" if np.all(mu >= -tol) and mu.sum() <= 1 + tol else None)
    return ConvexityReport(all(r is not None for r in rules), rules)


# ------------------------------------------------------ simplex constructions


def simplex_from_very_strict(
    f: Signomial,
    v,
    seeds=None,
    a0: float | None = None,
    seed: int = 0,
) -> SimplexWitness:
    """Build a simplex from a very strict separating vector ``v``.

    The facets are the negated very strict basis at the common level, plus
    one closing facet whose normal is the sum of the basis.  ``seeds`` and
    ``a0`` optionally fix the free choices (auxiliary basis and closing
    offset, which must exceed the maximum over the support).
    """
    s = signed_support(f)
    if s.positive.shape[0] == 0 or s.negative.shape[0] == 0:
        raise SimplexError("both signs must be present")
    if classify_strictness(v, s) is not Strictness.VERY_STRICT:
        raise SimplexError("v is not a very strict separating vector")
    basis = very_strict_basis(v, s, seeds=seeds, seed=seed)
    W = -basis.vectors  # facets keep the negative points on their <= side
    w0 = -W.sum(axis=0)
    proj = f.exponents @ w0
    top = float(proj.max())
    if a0 is None:
        a0 = top + 1.0 + float(proj.max() - proj.min())
    elif not a0 > top:
        raise SimplexError(f"closing offset must exceed {top}")
    planes = [Hyperplane(w0, a0)] + [Hyperplane(w, -basis.c) for w in W]
    P = simplex_from_halfspaces(planes)
    check = check_simplex(f, P)
    if not check.valid:
        raise SimplexError("; ".join(check.violations()))
    return P


def _complement_direction(W: np.ndarray, n: int) -> np.ndarray:
    if W.shape[0] == 0:
        return np.eye(n)[0]
    return np.linalg.svd(W, full_matrices=True)[2][-1]


def simplex_from_nonstrict_family(f: Signomial, W, max_halvings: int = 60) -> SimplexWitness:
    """Build a simplex from ``n - 1`` independent non-strict separating vectors.

    Requires at least two negative points and no positive point inside the
    convex hull of the negative points.
    """
    s = signed_support(f)
    n = f.n
    W = np.asarray(W, dtype=float).reshape(-1, n)
    if W.shape[0] != n - 1:
        raise SimplexError(f"need {n - 1} separating vectors, got {W.shape[0]}")
    if s.negative.shape[0] < 2:
        raise SimplexError("need at least two negative points")
    if W.shape[0] and np.linalg.matrix_rank(W, tol=1e-10) < W.shape[0]:
        raise SimplexError("separating vectors are linearly dependent")
    for w in W:
        if classify_strictness(w, s) is not Strictness.NONSTRICT:
            raise SimplexError(f"{w.tolist()} is not a non-strict separating vector")
    for alpha in s.positive:
        if in_convex_hull(alpha, s.negative):
            raise SimplexError(f"positive point {alpha.tolist()} lies in the hull of the negative points")

    if s.positive.shape[0]:
        offsets = (s.positive @ W.T).max(axis=0) if W.shape[0] else np.zeros(0)
    else:
        offsets = (s.negative @ W.T).min(axis=0) if W.shape[0] else np.zeros(0)
    v = W.sum(axis=0) if W.shape[0] else np.zeros(n)
    d = float(offsets.sum())
    vp = s.positive @ v
    off_level = vp[np.abs(vp - d) > BARY_TOL * max(1.0, abs(d))]
    eps = d - float(off_level.max()) if off_level.size else np.inf

    z = _complement_direction(W, n)
    zb = s.negative @ z
    beta0, beta1 = s.negative[np.argmin(zb)], s.negative[np.argmax(zb)]
    if not zb.max() > zb.min():
        raise SimplexError("negative points are degenerate along the complement direction")
    M = float((s.positive @ z).max()) if s.positive.shape[0] else -np.inf

    caps = []
    for zbeta, factor in ((z @ beta0, 1.0), (z @ beta1, 2.0)):
        gap = M - zbeta
        if gap > 0 and np.isfinite(eps):
            caps.append(factor * eps / gap)
    lam = min(caps) if caps else 1.0

    last_error: Exception | None = None
    for _ in range(max_halvings):
        mu = 0.5 * lam
        w0, a0 = v + lam * z, d + lam * float(z @ beta0)
        wn, an = -v - mu * z, -d - mu * float(z @ beta1)
        normals = [w0] + list(W) + [wn]
        offs = [a0] + list(offsets) + [an]
        # P = intersection of {w . x >= a}; flip to the <= convention
        planes = [Hyperplane(-w, -a) for w, a in zip(normals, offs)]
        try:
            P = simplex_from_halfspaces(planes)
        except SimplexError as exc:
            last_error = exc
            lam *= 0.5
            continue
        check = check_simplex(f, P)
        if check.valid:
            return P
        last_error = SimplexError("; ".join(check.violations()))
        lam *= 0.5
    raise last_error or SimplexError("construction failed")

