"""Certificates bounding the number of negative (or positive) sign components.

``certify`` runs a cascade of sufficient conditions, cheapest and tightest
first, and returns the first one that applies together with its witness.
Every witness is re-checked by :func:`check_certificate`, which only does
direct arithmetic on the serialized numbers.
"""

from __future__ import annotations

import copy

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import descartes
from .geometry import (
    BARY_TOL,
    SimplexError,
    SimplexWitness,
    check_simplex,
    negative_cone_membership,
    simplex_from_halfspaces,
    simplex_from_nonstrict_family,
    Hyperplane,
)
from .polytope import affine_dimension, affine_hull_basis, convex_hull_vertices
from .separation import (
    LP_TOL,
    PARTITION_CAP,
    SeparationWitness,
    Strictness,
    classify_enclosing,
    classify_strictness,
    find_enclosing_vector,
    find_separating_vector,
    separating_cone_basis,
)
from .signomial import Signomial, signed_support

__all__ = [
    "Certificate",
    "CertificateError",
    "RULES",
    "UNKNOWN",
    "certify",
    "check_certificate",
    "simplex_to_separating",
    "univariate_certify",
]

UNKNOWN = "unknown"
CHECK_TOL = 1e-9

RULES = (
    "no_negative_points",
    "single_negative_point",
    "strict_separating",
    "convexification",
    "positive_hyperplane",
    "few_positive_points",
    "strict_enclosing",
    "descartes_univariate",
    "none",
)


class CertificateError(ValueError):
    """Raised for unusable inputs, e.g. a user simplex that fails validation."""


@dataclass
class Certificate:
    target: str
    bound: int | str
    rule: str
    witness: dict[str, Any] | None = None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def known(self) -> bool:
        return self.bound != UNKNOWN

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "bound": self.bound,
            "rule": self.rule,
            "witness": copy.deepcopy(self.witness),
            "diagnostics": list(self.diagnostics),
        }


# ------------------------------------------------------------------ helpers


def _simplex_payload(P: SimplexWitness, route: str, f: Signomial) -> dict:
    check = check_simplex(f, P)
    return {
        "type": "simplex",
        "route": route,
        "vertices": P.vertices.tolist(),
        "facets": [h.to_dict() for h in P.facets],
        "cones": check.positive_cones,
        "marginal": check.marginal,
    }


def _separation_payload(w: SeparationWitness) -> dict:
    return {"type": "separating", **w.to_dict()}


def _as_simplex(simplex) -> SimplexWitness:
    if isinstance(simplex, SimplexWitness):
        return simplex
    try:
        return SimplexWitness.from_vertices(simplex)
    except SimplexError as exc:
        raise CertificateError(f"supplied simplex is invalid: {exc}") from exc


def _newton_simplex(f: Signomial) -> SimplexWitness | None:
    """The Newton polytope, if it is a simplex containing every positive
    point as a vertex, padded to full dimension when it is lower dimensional."""
    s = signed_support(f)
    verts = convex_hull_vertices(f.exponents)
    d = affine_dimension(f.exponents)
    if verts.shape[0] != d + 1:
        return None
    vset = {tuple(v) for v in verts.tolist()}
    if not all(tuple(a) in vset for a in s.positive.tolist()):
        return None
    if d < f.n:
        origin, basis = affine_hull_basis(verts)
        full = np.linalg.svd(basis, full_matrices=True)[2] if basis.shape[0] else np.eye(f.n)
        extra = origin + full[d:]
        verts = np.vstack([verts, extra])
    try:
        return SimplexWitness.from_vertices(verts)
    except SimplexError:
        return None


def _positive_hyperplane(f: Signomial) -> Hyperplane | None:
    """A hyperplane through every positive point that misses a negative point."""
    s = signed_support(f)
    if s.positive.shape[0] == 0 or s.negative.shape[0] == 0:
        return None
    origin, basis = affine_hull_basis(s.positive)
    # components of the negative points orthogonal to aff(sigma_+)
    rel = s.negative - origin
    perp = rel - (rel @ basis.T) @ basis
    norms = np.linalg.norm(perp, axis=1)
    i = int(np.argmax(norms))
    scale = max(1.0, np.abs(s.points()).max())
    if norms[i] <= 1e-9 * scale:
        return None
    v = perp[i] / norms[i]
    return Hyperplane(v, float(v @ origin))


def simplex_to_separating(f: Signomial, P: SimplexWitness, tol: float = BARY_TOL) -> SeparationWitness | None:
    """Turn a valid simplex with an unused vertex cone into a separating vector.

    If no positive point lies in the cone at vertex ``k``, the negated
    normal of the facet opposite ``k`` separates.
    """
    check = check_simplex(f, P, tol)
    if not check.valid:
        raise SimplexError("; ".join(check.violations()))
    s = signed_support(f)
    used = set(check.positive_cones)
    for k in range(P.n + 1):
        if k in used:
            continue
        v = -P.facets[k].normal
        strictness = classify_strictness(v, s)
        if strictness is Strictness.NOT_SEPARATING:
            continue
        a = float((s.positive @ v).max()) if s.positive.shape[0] else float((s.negative @ v).min())
        return SeparationWitness(v, a, strictness)
    return None


def univariate_certify(f: Signomial, target: str = "negative") -> Certificate:
    """Descartes bound for a one-variable signomial."""
    if f.n != 1:
        raise ValueError("univariate_certify needs a one-variable signomial")
    _check_target(target)
    signs = [1 if c > 0 else -1 for c in f.coefficients]  # terms are sorted by exponent
    pos, neg = descartes.sign_bounds(signs)
    bound = neg if target == "negative" else pos
    witness = {"type": "sign_sequence", "signs": signs, "sign_changes": descartes.sign_changes(signs)}
    return Certificate(target, int(bound), "descartes_univariate", witness)


def _check_target(target: str) -> None:
    if target not in ("negative", "positive"):
        raise ValueError(f"target must be 'negative' or 'positive', not {target!r}")


# ------------------------------------------------------------------ cascade


def _cascade(
    f: Signomial,
    simplex: SimplexWitness | None,
    tol_lp: float,
    partition_cap: int,
) -> Certificate:
    s = signed_support(f)
    n = f.n
    notes: list[str] = []

    if s.negative.shape[0] == 0:
        return Certificate("negative", 0, "no_negative_points")
    if s.negative.shape[0] == 1:
        return Certificate(
            "negative", 1, "single_negative_point", {"type": "single_point", "point": s.negative[0].tolist()}
        )

    sep = find_separating_vector(s, tol_lp)
    if sep is not None and sep.strictness in (Strictness.STRICT, Strictness.VERY_STRICT):
        return Certificate("negative", 1, "strict_separating", _separation_payload(sep))
    notes.append("no strict separating vector" if sep is None else "only non-strict separating vectors")

    if simplex is not None:
        return Certificate("negative", 1, "convexification", _simplex_payload(simplex, "supplied", f))

    P = _newton_simplex(f)
    if P is not None and check_simplex(f, P).valid:
        return Certificate("negative", 1, "convexification", _simplex_payload(P, "newton_simplex", f))
    notes.append("Newton polytope is not a simplex with positive vertices")

    if sep is not None and n >= 2:
        family = _nonstrict_family(s, n, tol_lp)
        if family is not None:
            try:
                P = simplex_from_nonstrict_family(f, family)
                return Certificate("negative", 1, "convexification", _simplex_payload(P, "nonstrict_family", f))
            except SimplexError as exc:
                notes.append(f"non-strict family route failed: {exc}")
        else:
            notes.append(f"fewer than {n - 1} independent non-strict separating vectors")

    H = _positive_hyperplane(f)
    if H is not None:
        return Certificate(
            "negative", 2, "positive_hyperplane", {"type": "hyperplane", **H.to_dict()}, notes
        )
    notes.append("positive points span a full-dimensional affine hull")

    dim = affine_dimension(f.exponents)
    if s.positive.shape[0] <= dim:
        witness = {"type": "cardinality", "positive_points": int(s.positive.shape[0]), "newton_dimension": dim}
        return Certificate("negative", 2, "few_positive_points", witness, notes)

    search = find_enclosing_vector(s.flipped(), cap=partition_cap, tol=tol_lp)
    if search.found_strict:
        w = search.witness
        return Certificate("negative", 2, "strict_enclosing", {"type": "enclosing", **w.to_dict()}, notes)
    if search.truncated:
        notes.append(f"enclosing search truncated: more than {partition_cap} negative points")
    else:
        notes.append("no strict enclosing vector of the support of -f")
    return Certificate("negative", UNKNOWN, "none", None, notes)


def _nonstrict_family(s, n: int, tol_lp: float) -> np.ndarray | None:
    basis = separating_cone_basis(s, tol=tol_lp)
    keep = [w for w in basis if classify_strictness(w, s) is Strictness.NONSTRICT]
    if len(keep) < n - 1:
        return None
    return np.array(keep[: n - 1]).reshape(n - 1, n)


def certify(
    f: Signomial,
    target: str = "negative",
    simplex=None,
    tol_lp: float = LP_TOL,
    partition_cap: int = PARTITION_CAP,
) -> Certificate:
    """Bound the number of ``target``-sign components of the complement of
    the zero set of ``f`` in the positive orthant.

    ``simplex`` may be a :class:`SimplexWitness` or a list of ``n + 1``
    vertices; it is validated first and a failure raises
    :class:`CertificateError`.  Positive targets are handled through ``-f``.
    """
    _check_target(target)
    if len(f) == 0:
        raise ValueError("cannot certify the zero signomial")
    g = f if target == "negative" else -f
    P = None
    if simplex is not None:
        P = _as_simplex(simplex)
        if P.n != f.n:
            raise CertificateError(f"simplex has dimension {P.n}, signomial has {f.n}")
        check = check_simplex(g, P)
        if not check.valid:
            raise CertificateError("supplied simplex fails: " + "; ".join(check.violations()))

    cert = _cascade(g, P, tol_lp, partition_cap)
    cert.target = target
    if f.n == 1:
        uni = univariate_certify(f, target)
        if not cert.known or uni.bound < cert.bound:
            uni.diagnostics = cert.diagnostics + [f"cascade gave {cert.bound} via {cert.rule}"]
            return uni
        cert.diagnostics.append(f"univariate sign rule gives {uni.bound}")
    return cert


# ------------------------------------------------------------ revalidation


def check_certificate(f: Signomial, cert, tol: float = CHECK_TOL) -> bool:
    """Re-derive a certificate's claim from its serialized witness.

    Works on :class:`Certificate` objects or their ``to_dict`` form and uses
    only dot products and small linear solves, never an LP.
    """
    d = cert.to_dict() if isinstance(cert, Certificate) else dict(cert)
    g = f if d["target"] == "negative" else -f
    s = signed_support(g)
    rule, bound, w = d["rule"], d["bound"], d.get("witness")
    npos, nneg = s.positive.shape[0], s.negative.shape[0]

    if rule == "none":
        return bound == UNKNOWN
    if rule == "no_negative_points":
        return bound == 0 and nneg == 0
    if rule == "single_negative_point":
        return bound == 1 and nneg == 1 and np.allclose(s.negative[0], w["point"])
    if rule == "strict_separating":
        v = np.asarray(w["v"], dtype=float)
        a = float(w["a"])
        if npos and np.max(s.positive @ v) > a + tol:
            return False
        proj = s.negative @ v
        return bound == 1 and bool(np.min(proj) >= a - tol and np.max(proj) > a + tol)
    if rule == "convexification":
        if w["route"] in ("supplied", "newton_simplex", "nonstrict_family"):
            try:
                planes = [Hyperplane(h["normal"], h["offset"]) for h in w["facets"]]
                P = simplex_from_halfspaces(planes)
            except SimplexError:
                return False
            if not np.allclose(np.sort(P.vertices, axis=0), np.sort(np.asarray(w["vertices"]), axis=0), atol=1e-6):
                return False
            in_p = all(np.all([h.value(beta) <= tol for h in planes]) for beta in s.negative)
            cones = all(negative_cone_membership(P, a) is not None for a in s.positive)
            return bound == 1 and in_p and cones
        return False
    if rule == "positive_hyperplane":
        v = np.asarray(w["normal"], dtype=float)
        a = float(w["offset"])
        on = np.all(np.abs(s.positive @ v - a) <= tol * max(1.0, abs(a)))
        off = np.any(np.abs(s.negative @ v - a) > tol * max(1.0, abs(a)))
        return bound == 2 and bool(on and off)
    if rule == "few_positive_points":
        return bound == 2 and npos <= affine_dimension(g.exponents) and npos == w["positive_points"]
    if rule == "strict_enclosing":
        v = np.asarray(w["v"], dtype=float)
        return bound == 2 and classify_enclosing(v, s.flipped(), tol) == "strict"
    if rule == "descartes_univariate":
        if g.n != 1:
            return False
        signs = [1 if c > 0 else -1 for c in f.coefficients]
        pos, neg = descartes.sign_bounds(signs)
        return bound == (neg if d["target"] == "negative" else pos)
    return False
