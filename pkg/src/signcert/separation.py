"""Separating and enclosing vectors of a signed support, found by LP.

A vector ``v`` separates when every positive point lies weakly below a level
``a`` of ``mu -> v . mu`` and every negative point weakly above it.  It
encloses when the negative points fit in a slab ``a <= v . mu <= b`` that no
positive point enters (open slab).  All witnesses returned here are
re-checked by direct dot products before they leave the module.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .lp import linprog
from .polytope import convex_hull_vertices
from .signomial import SignedSupport

__all__ = [
    "EnclosingSearch",
    "EnclosingWitness",
    "SeparationWitness",
    "Strictness",
    "VeryStrictBasis",
    "check_very_strict_basis",
    "classify_enclosing",
    "classify_strictness",
    "find_enclosing_vector",
    "find_separating_vector",
    "separating_cone_basis",
    "very_strict_basis",
]

FEAS_TOL = 1e-9
LP_TOL = 1e-7
PARTITION_CAP = 16


class Strictness(str, enum.Enum):
    NOT_SEPARATING = "not_separating"
    NONSTRICT = "nonstrict"
    STRICT = "strict"
    VERY_STRICT = "very_strict"


@dataclass(frozen=True)
class SeparationWitness:
    v: np.ndarray
    a: float
    strictness: Strictness
    slack: float = 0.0
    marginal: bool = False

    def to_dict(self) -> dict:
        return {
            "v": self.v.tolist(),
            "a": self.a,
            "strictness": self.strictness.value,
            "slack": self.slack,
            "marginal": self.marginal,
        }


@dataclass(frozen=True)
class EnclosingWitness:
    v: np.ndarray
    a: float
    b: float
    strict: bool
    lower: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "v": self.v.tolist(),
            "a": self.a,
            "b": self.b,
            "strict": self.strict,
            "lower": self.lower.tolist(),
            "upper": self.upper.tolist(),
        }


@dataclass(frozen=True)
class EnclosingSearch:
    """Outcome of an enclosing-vector search.

    ``truncated`` means the partition space was too large to enumerate, so a
    missing strict witness is *not* evidence that none exists.
    """

    witness: EnclosingWitness | None
    truncated: bool
    partitions_tried: int

    @property
    def found_strict(self) -> bool:
        return self.witness is not None and self.witness.strict


def _box_bound(s: SignedSupport) -> float:
    pts = s.points()
    return 1.0 + (np.abs(pts).max() if pts.size else 0.0)


def _is_marginal(t: float, tol: float) -> bool:
    return tol / 10.0 < t <= 10.0 * tol


def classify_strictness(v, s: SignedSupport, tol: float = FEAS_TOL) -> Strictness:
    """Classify ``v`` using the canonical level ``a = max over positive points``."""
    v = np.asarray(v, dtype=float).ravel()
    if s.negative.shape[0] == 0:
        return Strictness.NONSTRICT
    neg = s.negative @ v
    if s.positive.shape[0] == 0:
        return Strictness.VERY_STRICT
    a = float((s.positive @ v).max())
    if neg.min() < a - tol:
        return Strictness.NOT_SEPARATING
    if neg.min() > a + tol:
        return Strictness.VERY_STRICT
    if neg.max() > a + tol:
        return Strictness.STRICT
    return Strictness.NONSTRICT


def _separation_system(s: SignedSupport):
    """Rows for ``v.alpha - a <= 0`` and ``a - v.beta <= 0`` over ``(v, a)``."""
    n = s.n
    rows = [np.hstack([s.positive, -np.ones((s.positive.shape[0], 1))])]
    rows.append(np.hstack([-s.negative, np.ones((s.negative.shape[0], 1))]))
    A = np.vstack(rows) if rows else np.zeros((0, n + 1))
    B = _box_bound(s)
    bounds = [(-1.0, 1.0)] * n + [(-B, B)]
    return A, bounds


def _canonical_level(v: np.ndarray, s: SignedSupport, fallback: float) -> float:
    if s.positive.shape[0]:
        return float((s.positive @ v).max())
    if s.negative.shape[0]:
        return float((s.negative @ v).min()) - 1.0
    return fallback


def _nonzero_in_cone(A: np.ndarray, bounds, n: int, extra_cols: int = 0, tol: float = LP_TOL):
    """Look for a feasible point whose ``v`` part is nonzero by maximising
    each signed coordinate in turn; return the first hit or ``None``."""
    for i in range(n):
        for sign in (1.0, -1.0):
            c = np.zeros(n + 1 + extra_cols)
            c[i] = -sign
            res = linprog(c, A_ub=A, b_ub=np.zeros(A.shape[0]), bounds=bounds)
            if res.success and -res.fun > tol:
                return res.x
    return None


def find_separating_vector(s: SignedSupport, tol: float = LP_TOL) -> SeparationWitness | None:
    """Find a nonzero separating vector of maximal strictness, or ``None``.

    The zero vector always separates trivially and is never returned, except
    when there are no positive points (then ``v = 0`` with any level below
    the negative points is already very strict).
    """
    n = s.n
    if s.negative.shape[0] == 0:
        v = np.eye(n)[0]
        return SeparationWitness(v, _canonical_level(v, s, 0.0), Strictness.NONSTRICT)

    A, bounds = _separation_system(s)
    q = s.negative.shape[0]
    n_pos = s.positive.shape[0]

    # very strict: maximise the smallest slack t <= v.beta - a
    A1 = np.hstack([A, np.zeros((A.shape[0], 1))])
    A1[n_pos:, -1] = 1.0
    res = linprog(
        np.r_[np.zeros(n + 1), -1.0], A_ub=A1, b_ub=np.zeros(A1.shape[0]), bounds=bounds + [(0.0, 1.0)]
    )
    t_star = -res.fun if res.success else 0.0
    if t_star > tol:
        v = res.x[:n]
        a = _canonical_level(v, s, res.x[n])
        w = SeparationWitness(v, a, Strictness.VERY_STRICT, t_star, _is_marginal(t_star, tol))
        return _checked(w, s)

    # strict: maximise the total slack sum(v.beta - a)
    c = np.r_[-s.negative.sum(axis=0), float(q)]
    res = linprog(c, A_ub=A, b_ub=np.zeros(A.shape[0]), bounds=bounds)
    total = -res.fun if res.success else 0.0
    if total > tol:
        v = res.x[:n]
        a = _canonical_level(v, s, res.x[n])
        w = SeparationWitness(v, a, Strictness.STRICT, total, _is_marginal(total, tol))
        return _checked(w, s)

    x = _nonzero_in_cone(A, bounds, n, tol=tol)
    if x is None:
        return None
    v = x[:n]
    w = SeparationWitness(v, _canonical_level(v, s, x[n]), Strictness.NONSTRICT, 0.0, _is_marginal(total, tol))
    return _checked(w, s)


def _checked(w: SeparationWitness, s: SignedSupport) -> SeparationWitness:
    got = classify_strictness(w.v, s)
    if got is Strictness.NOT_SEPARATING:
        raise ArithmeticError("LP returned a vector that does not separate")
    if got is not w.strictness:
        # the LP slack and the direct check disagree only near the tolerance
        return SeparationWitness(w.v, w.a, got, w.slack, True)
    return w


def separating_cone_basis(s: SignedSupport, n_random: int = 8, seed: int = 0, tol: float = LP_TOL) -> np.ndarray:
    """A maximal set of linearly independent separating vectors, as rows."""
    n = s.n
    A, bounds = _separation_system(s)
    rng = np.random.default_rng(seed)
    directions = [sign * e for e in np.eye(n) for sign in (1.0, -1.0)]
    directions += list(rng.normal(size=(n_random, n)))
    found: list[np.ndarray] = []
    for d in directions:
        res = linprog(np.r_[-d, 0.0], A_ub=A, b_ub=np.zeros(A.shape[0]), bounds=bounds)
        if not res.success or -res.fun <= tol:
            continue
        v = res.x[:n]
        cand = np.vstack(found + [v])
        if np.linalg.matrix_rank(cand, tol=1e-8) == cand.shape[0]:
            found.append(v)
            if len(found) == n:
                break
    return np.array(found).reshape(-1, n)


# ---------------------------------------------------------------- enclosing


def classify_enclosing(v, s: SignedSupport, tol: float = FEAS_TOL) -> str:
    """Return ``"not_enclosing"``, ``"nonstrict"`` or ``"strict"``.

    The slab is spanned by the negative points of ``s``; the positive points
    must stay outside its interior.
    """
    v = np.asarray(v, dtype=float).ravel()
    if s.negative.shape[0] == 0:
        return "nonstrict"
    proj = s.negative @ v
    a, b = proj.min(), proj.max()
    out = s.positive @ v
    if np.any((out > a + tol) & (out < b - tol)):
        return "not_enclosing"
    if np.any(out < a - tol) and np.any(out > b + tol):
        return "strict"
    return "nonstrict"


def _enclosing_from_v(v: np.ndarray, s: SignedSupport, tol: float = FEAS_TOL) -> EnclosingWitness | None:
    kind = classify_enclosing(v, s, tol)
    if kind == "not_enclosing":
        return None
    proj = s.negative @ v
    a, b = (float(proj.min()), float(proj.max())) if proj.size else (0.0, 0.0)
    out = s.positive @ v
    lower = s.positive[out <= a + tol]
    upper = s.positive[out > a + tol]
    return EnclosingWitness(v, a, b, kind == "strict", lower, upper)


def _candidate_directions(s: SignedSupport, n_random: int, seed: int) -> list[np.ndarray]:
    n = s.n
    dirs: list[np.ndarray] = list(np.eye(n))
    pts = s.points()
    if n == 2 and pts.shape[0] >= 2:
        # normals of edges of the hull of everything, and of the enclosed set
        for group in (pts, s.negative):
            if group.shape[0] < 2:
                continue
            hull = convex_hull_vertices(group)
            for p, q in zip(hull, np.roll(hull, -1, axis=0)):
                d = q - p
                if np.any(d):
                    dirs.append(np.array([-d[1], d[0]]))
        # normals through every pair of points
        for p, q in itertools.combinations(pts, 2):
            d = q - p
            dirs.append(np.array([-d[1], d[0]]))
    rng = np.random.default_rng(seed)
    dirs += list(rng.normal(size=(n_random, n)))
    out = []
    for d in dirs:
        norm = np.linalg.norm(d)
        if norm > 0:
            out.append(d / norm)
    return out


def _partition_lp(s: SignedSupport, lower_mask: np.ndarray):
    """Maximise the strictness slack for one lower/upper split of the
    positive (outside) points.  Returns ``(t, v)`` or ``None`` if infeasible."""
    n = s.n
    L = s.positive[lower_mask]
    U = s.positive[~lower_mask]
    E = s.negative
    # variables (v, a, b, t)
    rows = []
    for beta in L:
        rows.append(np.r_[beta, -1.0, 0.0, 0.0])
    for alpha in E:
        rows.append(np.r_[-alpha, 1.0, 0.0, 0.0])
        rows.append(np.r_[alpha, 0.0, -1.0, 0.0])
    for beta in U:
        rows.append(np.r_[-beta, 0.0, 1.0, 0.0])
    if L.shape[0] and U.shape[0]:
        rows.append(np.r_[L.sum(axis=0), -float(L.shape[0]), 0.0, 1.0])
        rows.append(np.r_[-U.sum(axis=0), 0.0, float(U.shape[0]), 1.0])
        t_hi = 1.0
    else:
        t_hi = 0.0
    A = np.array(rows).reshape(-1, n + 3)
    B = _box_bound(s)
    bounds = [(-1.0, 1.0)] * n + [(-B, B), (-B, B), (0.0, t_hi)]
    c = np.zeros(n + 3)
    c[-1] = -1.0
    res = linprog(c, A_ub=A, b_ub=np.zeros(A.shape[0]), bounds=bounds)
    if not res.success:
        return None
    return -res.fun, res.x[:n]


def find_enclosing_vector(
    s: SignedSupport,
    cap: int = PARTITION_CAP,
    n_random: int = 256,
    seed: int = 0,
    tol: float = LP_TOL,
) -> EnclosingSearch:
    """Search for an enclosing vector of ``s``, preferring a strict one.

    Direction sampling runs first.  If it finds no strict witness and the
    outside set has at most ``cap`` points, every lower/upper split of it is
    tried with an LP (splits and their mirror images are tried once).
    Otherwise the result is flagged ``truncated``.
    """
    n = s.n
    k = s.positive.shape[0]
    if k == 0:
        v = np.eye(n)[0]
        return EnclosingSearch(_enclosing_from_v(v, s), False, 0)

    fallback: EnclosingWitness | None = None
    for v in _candidate_directions(s, n_random, seed):
        w = _enclosing_from_v(v, s)
        if w is None:
            continue
        if w.strict:
            return EnclosingSearch(w, False, 0)
        if fallback is None:
            fallback = w

    if k > cap:
        return EnclosingSearch(fallback, True, 0)

    tried = 0
    for bits in range(2 ** (k - 1)):
        # point 0 always lands in the lower group; the mirror split is -v
        lower_mask = np.array([i == 0 or bool(bits >> (i - 1) & 1) for i in range(k)])
        tried += 1
        out = _partition_lp(s, lower_mask)
        if out is None:
            continue
        t, v = out
        if np.linalg.norm(v) <= tol:
            continue
        w = _enclosing_from_v(v, s)
        if w is None:
            continue
        if t > tol and w.strict:
            return EnclosingSearch(w, False, tried)
        if fallback is None:
            fallback = w
    return EnclosingSearch(fallback, False, tried)


# ---------------------------------------------------------- very strict basis


@dataclass(frozen=True)
class VeryStrictBasis:
    vectors: np.ndarray  # rows w_1..w_n
    c: float
    weights: np.ndarray  # v = sum weights[i] * vectors[i], all > 0

    def to_dict(self) -> dict:
        return {"vectors": self.vectors.tolist(), "c": self.c, "weights": self.weights.tolist()}


def _cone_weights(vectors: np.ndarray, v: np.ndarray) -> np.ndarray | None:
    if np.linalg.matrix_rank(vectors, tol=1e-10) < vectors.shape[0]:
        return None
    return np.linalg.solve(vectors.T, v)


def check_very_strict_basis(vectors, v, s: SignedSupport, c: float | None = None, tol: float = FEAS_TOL) -> bool:
    """Every row very strict with one common level ``c``, rows a basis, and
    ``v`` strictly inside their cone."""
    W = np.atleast_2d(np.asarray(vectors, dtype=float))
    v = np.asarray(v, dtype=float).ravel()
    if W.shape != (s.n, s.n):
        return False
    if c is None:
        hi = max((s.positive @ w).max() for w in W)
        lo = min((s.negative @ w).min() for w in W)
        if not hi < lo - tol:
            return False
        c = 0.5 * (hi + lo)
    for w in W:
        if classify_strictness(w, s, tol) is not Strictness.VERY_STRICT:
            return False
        if not ((s.positive @ w).max() < c - tol and (s.negative @ w).min() > c + tol):
            return False
    lam = _cone_weights(W, v)
    return lam is not None and bool(np.all(lam > tol))


def very_strict_basis(
    v,
    s: SignedSupport,
    seeds=None,
    seed: int = 0,
    max_halvings: int = 60,
) -> VeryStrictBasis:
    """Perturb a very strict vector ``v`` into a basis of very strict vectors
    sharing the level ``c = (a + b) / 2`` and containing ``v`` in the
    interior of their cone.

    ``seeds`` optionally fixes the auxiliary basis ``v_1..v_n`` (rows); it
    must contain ``v`` in its open cone.
    """
    v = np.asarray(v, dtype=float).ravel()
    n = s.n
    if s.positive.shape[0] == 0 or s.negative.shape[0] == 0:
        raise ValueError("both signs must be present")
    if classify_strictness(v, s) is not Strictness.VERY_STRICT:
        raise ValueError("v is not a very strict separating vector")
    a = float((s.positive @ v).max())
    b = float((s.negative @ v).min())
    c = 0.5 * (a + b)

    if seeds is not None:
        V = np.atleast_2d(np.asarray(seeds, dtype=float))
        lam = _cone_weights(V, v) if V.shape == (n, n) else None
        if lam is None or np.any(lam <= 0):
            raise ValueError("seed vectors must form a basis with v in their open cone")
    else:
        rng = np.random.default_rng(seed)
        delta = 0.5 * np.linalg.norm(v)
        V = v + delta * (np.eye(n) - 1.0 / n)
        lam = _cone_weights(V, v)
        tries = 0
        while lam is None or np.any(lam <= 1e-9):
            tries += 1
            if tries > 200:
                raise ArithmeticError("could not seed a basis around v")
            V = v + delta * (np.eye(n) - 1.0 / n) + 0.25 * delta * rng.normal(size=(n, n))
            lam = _cone_weights(V, v)

    pts = s.points()
    proj = pts @ V.T
    K, L = float(proj.min()), float(proj.max())
    caps = []
    if K < 0:
        caps.append((a - b) / (2.0 * K))
    if L > 0:
        caps.append((b - a) / (2.0 * L))
    eps = min(caps) if caps else 1.0

    for _ in range(max_halvings):
        W = v + eps * V
        if check_very_strict_basis(W, v, s, c):
            weights = _cone_weights(W, v)
            return VeryStrictBasis(W, c, weights)
        eps *= 0.5
    raise ArithmeticError("very strict perturbation did not converge")
