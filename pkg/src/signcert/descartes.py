"""Univariate sign-change counting and the bounds it implies on (0, inf)."""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .signomial import UnivariateSignomial

__all__ = [
    "ComponentBounds",
    "TailBehavior",
    "TailClassification",
    "classify_at_negative_start",
    "component_bounds",
    "sign_bounds",
    "sign_changes",
    "sign_sequence",
]


def sign_sequence(g: UnivariateSignomial) -> list[int]:
    """Coefficient signs (+1/-1) ordered by increasing exponent."""
    return g.signs()


def sign_changes(signs: Sequence[int]) -> int:
    signs = [1 if s > 0 else -1 for s in signs]
    return sum(a != b for a, b in zip(signs, signs[1:]))


class ComponentBounds(NamedTuple):
    max_components: int
    max_with_leading_sign: int
    max_with_opposite_sign: int


def component_bounds(signs: Sequence[int]) -> ComponentBounds:
    """Bounds on the sign components of ``(0, inf)`` minus the zero set.

    "Leading" refers to the sign of the highest-exponent coefficient.
    """
    if not len(signs):
        raise ValueError("empty sign sequence")
    rho = sign_changes(signs)
    if rho % 2 == 0:
        return ComponentBounds(rho + 1, rho // 2 + 1, rho // 2)
    half = (rho + 1) // 2
    return ComponentBounds(rho + 1, half, half)


def sign_bounds(signs: Sequence[int]) -> tuple[int, int]:
    """``(max positive components, max negative components)``."""
    b = component_bounds(signs)
    if signs[-1] > 0:
        return b.max_with_leading_sign, b.max_with_opposite_sign
    return b.max_with_opposite_sign, b.max_with_leading_sign


class TailBehavior(str, enum.Enum):
    CROSSES_ONCE_THEN_POSITIVE = "crosses_once_then_positive"
    STAYS_NEGATIVE = "stays_negative"


@dataclass(frozen=True)
class TailClassification:
    behavior: TailBehavior
    root: float | None = None


def classify_at_negative_start(g: UnivariateSignomial, tol: float = 1e-10) -> TailClassification:
    """Behaviour of ``g`` on ``[1, inf)`` given ``g(1) < 0``.

    Requires either at most two sign changes with a positive leading
    coefficient (then ``g`` has a unique root ``rho > 1`` and is negative
    before it, positive after), or at most one sign change with a negative
    leading coefficient (then ``g < 0`` on all of ``[1, inf)``).  Anything
    else raises ``ValueError``.
    """
    if not len(g):
        raise ValueError("g is identically zero")
    if not g(1.0) < 0:
        raise ValueError(f"precondition g(1) < 0 violated: g(1) = {g(1.0)!r}")
    rho = sign_changes(g.signs())
    lead = g.leading_coefficient
    if lead < 0:
        if rho > 1:
            raise ValueError("negative leading coefficient needs at most one sign change")
        return TailClassification(TailBehavior.STAYS_NEGATIVE)
    if rho > 2:
        raise ValueError("positive leading coefficient needs at most two sign changes")

    lo, hi = 1.0, 2.0
    while g(hi) <= 0:
        lo, hi = hi, 2.0 * hi
        if not np.isfinite(hi):
            raise ArithmeticError("root bracketing overflowed")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if g(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return TailClassification(TailBehavior.CROSSES_ONCE_THEN_POSITIVE, 0.5 * (lo + hi))
