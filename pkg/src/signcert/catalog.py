"""Worked examples used by the tests, the gallery and the CLI docs."""

from __future__ import annotations

import numpy as np

from .signomial import Signomial

__all__ = ["CUBICS", "EXAMPLES", "cubic", "heptagon", "p1", "p2", "p2_reduced", "p3", "p4", "p5"]


def p1() -> Signomial:
    return Signomial.from_terms([(1, (2.5, 0)), (-2, (0.5, 2)), (1, (0.5, 0)), (-1, (2.5, -2))])


def p2() -> Signomial:
    return Signomial.from_terms(
        [(-1, (4, 5)), (3, (3, 4)), (-1, (3, 2)), (-1, (2, 3)), (1, (1, 2)), (-3, (1, 1)), (1, (0, 1))]
    )


def p2_reduced() -> Signomial:
    """``p2`` without its ``(4, 5)`` and ``(2, 3)`` terms."""
    return Signomial.from_terms([(3, (3, 4)), (-1, (3, 2)), (1, (1, 2)), (-3, (1, 1)), (1, (0, 1))])


def p3() -> Signomial:
    return Signomial.from_terms(
        [
            (1, (3, 5)), (-1, (2, 5)), (1, (4, 2)), (1, (3, 3)), (-1, (5, 0)),
            (-1, (1, 4)), (-1, (3, 1)), (3, (2, 2)), (-1, (1, 3)), (1, (1, 1)),
        ]
    )


def p4() -> Signomial:
    return Signomial.from_terms(
        [(1, (5, 2)), (1, (1, 5)), (-2, (3, 2)), (-3, (2, 2)), (1, (1, 3)), (1, (0, 4)), (-1, (1, 1)), (1, (0, 0))]
    )


def p5() -> Signomial:
    return Signomial.from_terms(
        [(1, (4, 4)), (1, (2, 6)), (1, (2, 3)), (-5, (3, 3)), (-3, (2, 2)), (1, (1, 1)), (1, (0, 2))]
    )


EXAMPLES = {"p1": p1, "p2": p2, "p2_reduced": p2_reduced, "p3": p3, "p4": p4, "p5": p5}

# univariate cubics (coefficients by increasing degree) with their
# (positive, negative) sign-component counts on (0, inf)
CUBICS = {
    "a": ((8, -12, 6, -1), (1, 1)),
    "b": ((9, -15, 7, -1), (1, 2)),
    "c": ((15, -23, 9, -1), (2, 2)),
    "d": ((3, -7, 5, -1), (2, 1)),
}


def cubic(name: str) -> Signomial:
    coeffs, _ = CUBICS[name]
    return Signomial(coeffs, np.arange(len(coeffs), dtype=float).reshape(-1, 1))


def heptagon(radius: float = 3.0, center=(4.0, 4.0), negative_coefficient: float = -1.0) -> Signomial:
    """Positive terms on a regular heptagon, one negative term at its centre."""
    angles = 2 * np.pi * np.arange(7) / 7 + np.pi / 2
    verts = np.c_[np.cos(angles), np.sin(angles)] * radius + np.asarray(center)
    coeffs = np.r_[np.ones(7), negative_coefficient]
    return Signomial(coeffs, np.vstack([verts, center]))
