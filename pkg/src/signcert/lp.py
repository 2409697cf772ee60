"""Dense two-phase simplex method for the small linear programs used here.

Every program built by this package has a handful of variables (a normal
vector plus one or two offsets and a slack) and at most a few hundred
constraints, so a tableau implementation with Bland's anti-cycling rule is
both adequate and easy to audit.  All variables must carry finite bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["LPResult", "linprog"]

_PIVOT_TOL = 1e-11
_COST_TOL = 1e-10
_FEAS_TOL = 1e-9


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" or "infeasible"
    x: np.ndarray | None
    fun: float | None

    @property
    def success(self) -> bool:
        return self.status == "optimal"


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    col_vals = T[:, col].copy()
    col_vals[row] = 0.0
    T -= np.outer(col_vals, T[row])


def _run_simplex(T: np.ndarray, basis: list[int], allowed: np.ndarray) -> None:
    """Minimise the objective held in the last row of ``T`` in place.

    The last row stores reduced costs, with ``-objective`` in its last
    column.  Only columns flagged in ``allowed`` may enter the basis.
    """
    m = T.shape[0] - 1
    max_iter = 50 * (T.shape[1] + m) + 1000
    for _ in range(max_iter):
        costs = T[-1, :-1]
        candidates = np.flatnonzero((costs < -_COST_TOL) & allowed)
        if candidates.size == 0:
            return
        col = int(candidates[0])  # Bland: lowest index enters
        column = T[:m, col]
        positive = column > _PIVOT_TOL
        if not positive.any():
            raise RuntimeError("LP is unbounded; all variables must be boxed")
        ratios = np.full(m, np.inf)
        ratios[positive] = T[:m, -1][positive] / column[positive]
        best = ratios.min()
        ties = np.flatnonzero(ratios <= best + 1e-12 * max(1.0, abs(best)))
        row = int(min(ties, key=lambda r: basis[r]))  # Bland: lowest basic index leaves
        _pivot(T, row, col)
        basis[row] = col
    raise RuntimeError("simplex iteration limit reached")


def linprog(
    c,
    A_ub=None,
    b_ub=None,
    A_eq=None,
    b_eq=None,
    bounds=None,
) -> LPResult:
    """Minimise ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``
    and ``lo <= x <= hi`` for each ``(lo, hi)`` in ``bounds``.

    ``bounds`` is required and every bound must be finite.
    """
    c = np.asarray(c, dtype=float)
    k = c.size
    if bounds is None or len(bounds) != k:
        raise ValueError("every variable needs a finite (lo, hi) bound")
    lo = np.array([b[0] for b in bounds], dtype=float)
    hi = np.array([b[1] for b in bounds], dtype=float)
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
        raise ValueError("bounds must be finite")
    if np.any(hi < lo):
        return LPResult("infeasible", None, None)

    A_ub = np.zeros((0, k)) if A_ub is None else np.atleast_2d(np.asarray(A_ub, dtype=float))
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float).ravel()
    A_eq = np.zeros((0, k)) if A_eq is None else np.atleast_2d(np.asarray(A_eq, dtype=float))
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float).ravel()
    if A_ub.size == 0:
        A_ub = np.zeros((0, k))
    if A_eq.size == 0:
        A_eq = np.zeros((0, k))

    # shift x = lo + y with 0 <= y <= hi - lo; upper bounds become rows
    ub_rows = np.vstack([A_ub, np.eye(k)])
    ub_rhs = np.concatenate([b_ub - A_ub @ lo, hi - lo])
    eq_rhs = b_eq - A_eq @ lo

    m_ub, m_eq = ub_rows.shape[0], A_eq.shape[0]
    m = m_ub + m_eq
    n_slack = m_ub
    # rows needing an artificial: negative-rhs inequalities and all equalities
    needs_art = np.concatenate([ub_rhs < 0, np.ones(m_eq, dtype=bool)])
    n_art = int(needs_art.sum())
    n_cols = k + n_slack + n_art

    T = np.zeros((m + 1, n_cols + 1))
    T[:m_ub, :k] = ub_rows
    T[:m_ub, k : k + n_slack] = np.eye(m_ub)
    T[:m_ub, -1] = ub_rhs
    T[m_ub:m, :k] = A_eq
    T[m_ub:m, -1] = eq_rhs
    neg = np.flatnonzero(T[:m, -1] < 0)
    T[neg] *= -1.0

    basis: list[int] = []
    art = k + n_slack
    for r in range(m):
        if needs_art[r]:
            T[r, art] = 1.0
            basis.append(art)
            art += 1
        else:
            basis.append(k + r)

    # phase 1: minimise the sum of artificials
    if n_art:
        T[-1, :] = 0.0
        T[-1, k + n_slack : n_cols] = 1.0
        for r in range(m):
            if basis[r] >= k + n_slack:
                T[-1] -= T[r]
        _run_simplex(T, basis, np.ones(n_cols, dtype=bool))
        if -T[-1, -1] > _FEAS_TOL * max(1.0, np.abs(T[:m, -1]).max(initial=0.0)):
            return LPResult("infeasible", None, None)
        # drive remaining artificials out of the basis
        for r in range(m):
            if basis[r] >= k + n_slack:
                row = T[r, : k + n_slack]
                nz = np.flatnonzero(np.abs(row) > _PIVOT_TOL)
                if nz.size:
                    _pivot(T, r, int(nz[0]))
                    basis[r] = int(nz[0])
        keep = [r for r in range(m) if basis[r] < k + n_slack]
        T = np.vstack([T[keep], T[-1:]])
        basis = [basis[r] for r in keep]
        m = len(keep)

    # phase 2
    allowed = np.zeros(n_cols, dtype=bool)
    allowed[: k + n_slack] = True
    T[-1, :] = 0.0
    T[-1, :k] = c
    for r, b in enumerate(basis):
        if T[-1, b] != 0.0:
            T[-1] -= T[-1, b] * T[r]
    _run_simplex(T, basis, allowed)

    y = np.zeros(n_cols)
    for r, b in enumerate(basis):
        y[b] = T[r, -1]
    x = np.clip(lo + y[:k], lo, hi)
    return LPResult("optimal", x, float(c @ x))
