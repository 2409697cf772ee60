"""Signomials on the positive orthant and exact support-level operations."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AffineMap",
    "EvaluationOverflow",
    "Signomial",
    "SignedSupport",
    "UnivariateSignomial",
    "evaluate",
    "induced_univariate",
    "monomial_transform",
    "restrict",
    "signed_support",
]

# exp() overflows float64 just above this
_LOG_MAX = 709.0


class EvaluationOverflow(ArithmeticError):
    """A monomial ``x**mu`` does not fit in a float64."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _as_point(x, n: int, name: str = "x") -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size != n:
        raise ValueError(f"{name} has length {x.size}, expected {n}")
    return x


class Signomial:
    """A finite sum ``sum_mu c_mu x**mu`` with nonzero real coefficients.

    Terms with identical exponent vectors are merged on construction; a
    merged term whose coefficient cancels to zero is dropped.  Explicit zero
    coefficients are rejected.  Instances are immutable.
    """

    __slots__ = ("_coeffs", "_exps")

    def __init__(self, coefficients, exponents, n: int | None = None):
        coeffs = np.asarray(coefficients, dtype=float).ravel()
        exps = np.asarray(exponents, dtype=float)
        if exps.ndim == 1:
            if n is None:
                raise ValueError("pass n when exponents is one-dimensional")
            exps = exps.reshape(-1, n)
        if exps.ndim != 2:
            raise ValueError("exponents must be an (m, n) array")
        if n is not None and exps.shape[1] != n:
            raise ValueError(f"exponent vectors have length {exps.shape[1]}, expected {n}")
        if exps.shape[0] != coeffs.size:
            raise ValueError("one exponent vector per coefficient is required")
        if exps.shape[1] < 1:
            raise ValueError("dimension must be positive")
        if not (np.all(np.isfinite(coeffs)) and np.all(np.isfinite(exps))):
            raise ValueError("coefficients and exponents must be finite")
        if np.any(coeffs == 0.0):
            raise ValueError("zero coefficients are not allowed")

        merged: dict[tuple[float, ...], float] = {}
        for c, mu in zip(coeffs, exps):
            key = tuple(float(m) + 0.0 for m in mu)  # + 0.0 folds -0.0 into 0.0
            merged[key] = merged.get(key, 0.0) + float(c)
        keys = sorted(k for k, c in merged.items() if c != 0.0)
        dim = exps.shape[1]
        self._coeffs = _frozen(np.array([merged[k] for k in keys], dtype=float))
        self._exps = _frozen(np.array(keys, dtype=float).reshape(len(keys), dim))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[float, Sequence[float]]], n: int | None = None) -> "Signomial":
        terms = list(terms)
        if not terms:
            if n is None:
                raise ValueError("an empty signomial needs an explicit dimension")
            return cls(np.zeros(0), np.zeros((0, n)))
        coeffs = [c for c, _ in terms]
        exps = [list(np.atleast_1d(mu)) for _, mu in terms]
        lengths = {len(mu) for mu in exps}
        if len(lengths) != 1:
            raise ValueError("exponent vectors have mixed lengths")
        return cls(coeffs, exps, n)

    @property
    def coefficients(self) -> np.ndarray:
        return self._coeffs

    @property
    def exponents(self) -> np.ndarray:
        return self._exps

    @property
    def n(self) -> int:
        return self._exps.shape[1]

    def __len__(self) -> int:
        return self._coeffs.size

    @property
    def terms(self) -> list[tuple[float, tuple[float, ...]]]:
        return [(float(c), tuple(float(m) for m in mu)) for c, mu in zip(self._coeffs, self._exps)]

    def support(self) -> set[tuple[float, ...]]:
        return {mu for _, mu in self.terms}

    def coefficient(self, mu) -> float:
        """Coefficient of ``x**mu`` (0.0 if ``mu`` is not in the support)."""
        mu = _as_point(mu, self.n, "mu")
        hit = np.flatnonzero(np.all(self._exps == mu, axis=1))
        return float(self._coeffs[hit[0]]) if hit.size else 0.0

    def __neg__(self) -> "Signomial":
        return Signomial(-self._coeffs, self._exps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signomial):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self._exps, other._exps)
            and np.array_equal(self._coeffs, other._coeffs)
        )

    def __hash__(self) -> int:
        return hash((self.n, self._coeffs.tobytes(), self._exps.tobytes()))

    def __call__(self, x) -> float:
        return evaluate(self, x)

    def __repr__(self) -> str:
        if not len(self):
            return f"Signomial(0, n={self.n})"
        parts = []
        for c, mu in self.terms:
            mono = "*".join(f"x{i + 1}^{m:g}" for i, m in enumerate(mu) if m != 0.0)
            parts.append(f"{c:+g}" + (f"*{mono}" if mono else ""))
        return "Signomial(" + " ".join(parts) + ")"


@dataclass(frozen=True)
class SignedSupport:
    """Exponent vectors split by coefficient sign, as ``(k, n)`` arrays."""

    positive: np.ndarray
    negative: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positive, dtype=float)
        neg = np.asarray(self.negative, dtype=float)
        dims = {a.shape[1] for a in (pos, neg) if a.ndim == 2 and (a.size or a.shape[1])}
        if len(dims) != 1:
            raise ValueError("pass both sides as (k, n) arrays of one dimension n")
        n = dims.pop()
        object.__setattr__(self, "positive", _frozen(pos.reshape(-1, n).copy()))
        object.__setattr__(self, "negative", _frozen(neg.reshape(-1, n).copy()))

    @property
    def n(self) -> int:
        return self.positive.shape[1]

    @property
    def positive_points(self) -> set[tuple[float, ...]]:
        return {tuple(map(float, p)) for p in self.positive}

    @property
    def negative_points(self) -> set[tuple[float, ...]]:
        return {tuple(map(float, p)) for p in self.negative}

    def points(self) -> np.ndarray:
        return np.vstack([self.positive, self.negative])

    def flipped(self) -> "SignedSupport":
        """Signed support of ``-f``."""
        return SignedSupport(self.negative, self.positive)


def signed_support(f: Signomial) -> SignedSupport:
    pos = f.exponents[f.coefficients > 0]
    neg = f.exponents[f.coefficients < 0]
    return SignedSupport(pos, neg)


def evaluate(f: Signomial, x) -> float:
    """Evaluate ``f`` at a strictly positive point, in log space."""
    x = _as_point(x, f.n)
    if np.any(~(x > 0.0)):
        raise ValueError("signomials are only defined on the positive orthant")
    logs = f.exponents @ np.log(x)
    if np.any(logs > _LOG_MAX):
        raise EvaluationOverflow(f"monomial exceeds float range at x={x.tolist()}")
    return float(f.coefficients @ np.exp(logs))


def restrict(f: Signomial, S) -> Signomial:
    """Keep only the terms whose exponent vectors lie in ``S``."""
    S = np.asarray(list(S) if not isinstance(S, np.ndarray) else S, dtype=float).reshape(-1, f.n)
    keep = np.zeros(len(f), dtype=bool)
    for mu in S:
        hit = np.all(f.exponents == mu, axis=1)
        if not hit.any():
            raise ValueError(f"{tuple(mu.tolist())} is not in the support")
        keep |= hit
    return Signomial(f.coefficients[keep], f.exponents[keep], f.n)


@dataclass(frozen=True)
class AffineMap:
    """``mu -> matrix @ mu + shift`` acting on exponent vectors."""

    matrix: np.ndarray
    shift: np.ndarray

    def __post_init__(self):
        M = np.atleast_2d(np.asarray(self.matrix, dtype=float)).copy()
        v = np.asarray(self.shift, dtype=float).ravel().copy()
        if M.shape[0] != M.shape[1] or v.size != M.shape[0]:
            raise ValueError("matrix must be n x n and shift of length n")
        n = M.shape[0]
        scale = max(np.abs(M).max(), np.finfo(float).tiny)
        if abs(np.linalg.det(M)) <= 1e-12 * scale**n:
            raise ValueError("matrix is singular")
        object.__setattr__(self, "matrix", _frozen(M))
        object.__setattr__(self, "shift", _frozen(v))

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(np.eye(n), np.zeros(n))

    def apply(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return points @ self.matrix.T + self.shift

    def variable_change(self, x) -> np.ndarray:
        """The monomial change of variables ``x -> x**M`` (columns of M)."""
        x = np.asarray(x, dtype=float)
        return np.exp(np.log(x) @ self.matrix)


def monomial_transform(f: Signomial, T: AffineMap) -> Signomial:
    """Return ``x**shift * f(x**M)``, whose support is ``M sigma(f) + shift``."""
    if T.matrix.shape[0] != f.n:
        raise ValueError("map dimension does not match the signomial")
    return Signomial(f.coefficients, T.apply(f.exponents), f.n)


class UnivariateSignomial:
    """One-variable signomial with strictly increasing exponents."""

    __slots__ = ("coefficients", "exponents")

    def __init__(self, coefficients, exponents):
        c = np.asarray(coefficients, dtype=float).ravel()
        e = np.asarray(exponents, dtype=float).ravel()
        if c.size != e.size:
            raise ValueError("coefficients and exponents differ in length")
        order = np.argsort(e, kind="stable")
        c, e = c[order], e[order]
        if e.size:
            uniq, start = np.unique(e, return_index=True)
            c = np.add.reduceat(c, start)
            e = uniq
        nz = c != 0.0
        self.coefficients = _frozen(c[nz].copy())
        self.exponents = _frozen(e[nz].copy())

    def __len__(self) -> int:
        return self.coefficients.size

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(~(t > 0.0)):
            raise ValueError("t must be positive")
        out = np.power.outer(t, self.exponents) @ self.coefficients
        return float(out) if out.ndim == 0 else out

    def signs(self) -> list[int]:
        return [1 if c > 0 else -1 for c in self.coefficients]

    @property
    def leading_coefficient(self) -> float:
        return float(self.coefficients[-1])

    def derivative_times_t(self) -> "UnivariateSignomial":
        """``t * g'(t)``, which has the same positive roots as ``g'``."""
        return UnivariateSignomial(self.coefficients * self.exponents, self.exponents)

    def __repr__(self) -> str:
        body = " ".join(f"{c:+g}*t^{e:g}" for c, e in zip(self.coefficients, self.exponents))
        return f"UnivariateSignomial({body or '0'})"


def induced_univariate(f: Signomial, v, x, rtol: float = 1e-12) -> UnivariateSignomial:
    """Restrict ``f`` to the path ``t -> (t**v_i * x_i)``.

    The result is ``t -> sum_mu (c_mu x**mu) t**(v . mu)``; exponents whose
    dot products agree to ``rtol`` (relative to the largest) are merged.
    """
    v = _as_point(v, f.n, "v")
    x = _as_point(x, f.n)
    if np.any(~(x > 0.0)):
        raise ValueError("x must lie in the positive orthant")
    logs = f.exponents @ np.log(x)
    if np.any(logs > _LOG_MAX):
        raise EvaluationOverflow("monomial exceeds float range")
    weights = f.coefficients * np.exp(logs)
    degs = f.exponents @ v
    if degs.size:
        order = np.argsort(degs, kind="stable")
        degs, weights = degs[order], weights[order]
        tol = rtol * max(1.0, np.abs(degs).max())
        # snap near-equal dot products to the first of their run
        for i in range(1, degs.size):
            if degs[i] - degs[i - 1] <= tol:
                degs[i] = degs[i - 1]
    return UnivariateSignomial(weights, degs)
