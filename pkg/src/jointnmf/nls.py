"""Nonnegative least squares by block principal pivoting.

Solves min_{X >= 0} ||A X - B||_F^2 column by column on the normal
equations: A^T A and A^T B are formed once and shared by every column.
Each column keeps a passive set (variables allowed to be positive) and
an active set (variables pinned at zero).  A round solves the
unconstrained system on the passive set, checks primal feasibility of
the passive variables and dual feasibility of the active ones, and
exchanges every infeasible variable at once.  When full exchanges stop
shrinking the infeasible set, a backup rule swaps only the
lowest-index infeasible variable, which restores finite termination.

Columns are independent; identical inputs give identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import NonConvergence, ShapeMismatch, SingularSystem

__all__ = ["NlsOptions", "nls_bpp", "nls_bpp_gram", "kkt_residual", "kkt_residual_gram"]

KKT_TOL = 1e-10
RIDGE_SCALE = 1e-12


@dataclass
class NlsOptions:
    """Knobs for the pivoting loop.

    max_pivot_rounds: bound on exchange rounds; None means 5 times the
        number of variables per column.
    backup_rule_threshold: how many non-improving full exchanges are
        tolerated before falling back to single-variable swaps.
    """

    max_pivot_rounds: int | None = None
    backup_rule_threshold: int = 3

    def __post_init__(self):
        if self.max_pivot_rounds is not None and self.max_pivot_rounds < 1:
            raise ValueError("max_pivot_rounds must be positive")
        if self.backup_rule_threshold < 0:
            raise ValueError("backup_rule_threshold must be nonnegative")


def nls_bpp(A, B, opts: NlsOptions | None = None) -> np.ndarray:
    """Minimize ||A X - B||_F^2 over X >= 0.

    A is dense m x k, B is dense m x n (a single m-vector is accepted
    and returns a k-vector).  Returns the k x n optimizer.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.ndim != 2:
        raise ShapeMismatch(f"A must be 2-d, got shape {A.shape}")
    single = B.ndim == 1
    if single:
        B = B[:, None]
    if B.ndim != 2 or B.shape[0] != A.shape[0]:
        raise ShapeMismatch(f"A is {A.shape}, B is {B.shape}")
    X = nls_bpp_gram(A.T @ A, A.T @ B, opts)
    return X[:, 0] if single else X


def nls_bpp_gram(ata, atb, opts: NlsOptions | None = None) -> np.ndarray:
    """Same solver fed the precomputed products A^T A (k x k) and A^T B (k x n).

    This is the entry point the factorization sweeps use, since their
    stacked subproblems assemble the products directly.
    """
    opts = opts or NlsOptions()
    ata = np.asarray(ata, dtype=np.float64)
    atb = np.asarray(atb, dtype=np.float64)
    if ata.ndim != 2 or ata.shape[0] != ata.shape[1]:
        raise ShapeMismatch(f"A^T A must be square, got shape {ata.shape}")
    if atb.ndim != 2 or atb.shape[0] != ata.shape[0]:
        raise ShapeMismatch(f"A^T A is {ata.shape}, A^T B is {atb.shape}")
    if not (np.isfinite(ata).all() and np.isfinite(atb).all()):
        raise ValueError("nonfinite values in the normal equations")

    k, n = atb.shape
    if n == 0:
        return np.zeros((k, 0))
    max_rounds = opts.max_pivot_rounds if opts.max_pivot_rounds is not None else 5 * k
    ridge = RIDGE_SCALE * np.trace(ata) / k

    X = np.zeros((k, n))
    Y = -atb.copy()
    passive = np.zeros((k, n), dtype=bool)
    # per-column backup budget and best infeasibility count seen so far
    budget = np.full(n, opts.backup_rule_threshold, dtype=np.int64)
    best_ninf = np.full(n, k + 1, dtype=np.int64)

    infeasible = _infeasibility(X, Y, passive)
    cols = np.flatnonzero(infeasible.any(axis=0))
    rounds = 0
    while cols.size:
        rounds += 1
        if rounds > max_rounds:
            raise NonConvergence(
                f"block pivoting exceeded {max_rounds} rounds on {cols.size} column(s)"
            )
        ninf = infeasible[:, cols].sum(axis=0)
        improved = ninf < best_ninf[cols]
        best_ninf[cols[improved]] = ninf[improved]
        budget[cols[improved]] = opts.backup_rule_threshold
        stalled = ~improved
        has_budget = budget[cols] > 0
        budget[cols[stalled & has_budget]] -= 1

        full_cols = cols[improved | has_budget]
        passive[:, full_cols] ^= infeasible[:, full_cols]
        for c in cols[stalled & ~has_budget]:
            i = int(np.argmax(infeasible[:, c]))  # lowest infeasible index
            passive[i, c] = not passive[i, c]

        _solve_passive(ata, atb, passive, cols, X, Y, ridge)
        infeasible[:, cols] = _infeasibility(X[:, cols], Y[:, cols], passive[:, cols])
        cols = cols[infeasible[:, cols].any(axis=0)]
    return X


def _infeasibility(X, Y, passive):
    return (passive & (X < 0.0)) | (~passive & (Y < 0.0))


def _solve_passive(ata, atb, passive, cols, X, Y, ridge):
    """Refresh X and Y on the given columns from their passive sets.

    Columns sharing a passive pattern are solved together with one
    Cholesky factorization.
    """
    groups: dict[bytes, list[int]] = {}
    for c in cols:
        groups.setdefault(passive[:, c].tobytes(), []).append(c)
    for key, members in groups.items():
        pattern = np.frombuffer(key, dtype=bool)
        free = np.flatnonzero(pattern)
        cs = np.asarray(members)
        if free.size == 0:
            X[:, cs] = 0.0
            Y[:, cs] = -atb[:, cs]
            continue
        sub = ata[np.ix_(free, free)]
        rhs = atb[np.ix_(free, cs)]
        sol = _solve_spd(sub, rhs, ridge)
        X[:, cs] = 0.0
        X[free[:, None], cs[None, :]] = sol
        Y[:, cs] = ata[:, free] @ sol - atb[:, cs]
        Y[free[:, None], cs[None, :]] = 0.0


def _solve_spd(sub, rhs, ridge):
    """Cholesky solve with one ridge-regularized retry on singular systems."""
    try:
        f = linalg.cho_factor(sub, lower=True, check_finite=False)
        sol = linalg.cho_solve(f, rhs, check_finite=False)
        if np.isfinite(sol).all():
            return sol
    except linalg.LinAlgError:
        pass
    try:
        f = linalg.cho_factor(
            sub + ridge * np.eye(sub.shape[0]), lower=True, check_finite=False
        )
        sol = linalg.cho_solve(f, rhs, check_finite=False)
    except linalg.LinAlgError as exc:
        raise SingularSystem(
            f"passive-set system of order {sub.shape[0]} is singular even with ridge {ridge:g}"
        ) from exc
    if not np.isfinite(sol).all():
        raise SingularSystem("passive-set solve produced nonfinite values")
    return sol


def kkt_residual(A, B, X) -> float:
    """Largest optimality violation of X for min ||A X - B||_F^2, X >= 0."""
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if B.ndim == 1:
        B = B[:, None]
    return kkt_residual_gram(A.T @ A, A.T @ B, X)


def kkt_residual_gram(ata, atb, X) -> float:
    """KKT violation from the normal-equation products.

    For each entry: negativity of X counts directly; where X > 0 the
    gradient must vanish; where X == 0 the gradient must be nonnegative.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    grad = ata @ X - atb
    viol = np.where(X > 0.0, np.abs(grad), np.maximum(-grad, 0.0))
    neg = np.maximum(-X, 0.0)
    worst = 0.0
    if viol.size:
        worst = float(np.maximum(viol, neg).max())
    return worst
