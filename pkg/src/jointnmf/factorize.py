"""Nonnegative factorization of text, similarity, and both jointly.

Three solvers share one sweep engine:

  nmf(X):        min ||X - W H||_F^2                        over W, H >= 0
  symnmf(S):     min ||S - Ht^T H||_F^2 + beta ||Ht - H||^2 over H, Ht >= 0
  joint_nmf(X,S) min ||X - W H||_F^2 + alpha ||S - Ht^T H||_F^2
                     + beta ||Ht - H||_F^2                  over W, H, Ht >= 0

The similarity factor is split into H and a tether copy Ht so every
block update is an exact nonnegative least squares solve; the beta term
pulls the copies together.  A sweep updates W, then Ht, then H, each via
block principal pivoting on stacked normal equations.  The penalized
objective is recorded after every sweep and never increases.

alpha defaults to ||X||_F^2 / ||S||_F^2 so both data terms start on the
same scale, and beta defaults to alpha times the largest entry of S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import sparse

from .errors import ShapeMismatch, ZeroSimilarity
from .matrix import (
    as_csc,
    frobenius_norm_sq,
    max_abs,
    require_symmetric,
    write_matrix_market,
)
from .nls import NlsOptions, nls_bpp_gram

__all__ = [
    "FactorizeOptions",
    "FactorizationResult",
    "default_alpha",
    "default_beta",
    "joint_objective",
    "penalized_objective",
    "nmf",
    "symnmf",
    "joint_nmf",
    "hard_assign",
    "write_result",
]

STOP_FLOOR = 1e-30


@dataclass
class FactorizeOptions:
    """Settings shared by all three solvers.

    alpha and beta left as None are resolved from the data via
    default_alpha / default_beta.  trials > 1 runs independent starts
    from seeds seed, seed+1, ... and keeps the best final objective.
    beta_multiplier rescales beta once per sweep (1.0 keeps it fixed;
    anything else trades the monotonicity guarantee for experimentation).
    track_blocks records the objective after every individual block
    update, not just every sweep.
    """

    k: int
    alpha: float | None = None
    beta: float | None = None
    max_sweeps: int = 500
    rel_tol: float = 1e-4
    seed: int = 0
    trials: int = 1
    beta_multiplier: float = 1.0
    track_blocks: bool = False
    nls: NlsOptions | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.alpha is not None and self.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.beta is not None and self.beta < 0:
            raise ValueError("beta must be nonnegative")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be at least 1")
        if self.rel_tol < 0:
            raise ValueError("rel_tol must be nonnegative")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.beta_multiplier <= 0:
            raise ValueError("beta_multiplier must be positive")


@dataclass
class FactorizationResult:
    W: np.ndarray | None
    H: np.ndarray
    H_tilde: np.ndarray | None
    objective_history: list[float]
    sweeps_run: int
    seed_used: int
    block_objective_history: list[float] | None = None


def default_alpha(X, S) -> float:
    """Balance weight ||X||_F^2 / ||S||_F^2 for the similarity term."""
    s = frobenius_norm_sq(S)
    if s == 0.0:
        raise ZeroSimilarity("similarity matrix is identically zero")
    return frobenius_norm_sq(X) / s

def default_beta(alpha: float, S) -> float:
    """Tether weight alpha times the largest absolute entry of S."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    return alpha * max_abs(S)


def joint_objective(X, S, W, H, alpha: float) -> float:
    """||X - W H||_F^2 + alpha ||S - H^T H||_F^2 without the split copy."""
    X, W, H = _conform_text(X, W, H)
    S = _conform_sim(S, H)
    val = _text_obj(frobenius_norm_sq(X), X, W, H)
    if alpha != 0.0:
        val += alpha * _sim_obj(frobenius_norm_sq(S), S, H, H)
    return val


def penalized_objective(X, S, W, H, H_tilde, alpha: float, beta: float) -> float:
    """The split objective the sweeps actually minimize."""
    X, W, H = _conform_text(X, W, H)
    S = _conform_sim(S, H)
    Ht = np.asarray(H_tilde, dtype=np.float64)
    if Ht.shape != H.shape:
        raise ShapeMismatch(f"H is {H.shape} but the split copy is {Ht.shape}")
    val = _text_obj(frobenius_norm_sq(X), X, W, H)
    if alpha != 0.0:
        val += alpha * _sim_obj(frobenius_norm_sq(S), S, Ht, H)
    if beta != 0.0:
        d = Ht - H
        val += beta * float(np.vdot(d, d))
    return val


def nmf(X, opts: FactorizeOptions) -> FactorizationResult:
    """Two-block alternating nonnegative least squares on X alone."""
    X = _accept(X, "X")
    m, n = X.shape
    if m < 1 or n < 1:
        raise ValueError("X must have at least one row and one column")
    if opts.k > min(m, n):
        raise ValueError(f"k={opts.k} exceeds min(m, n)={min(m, n)}")
    return _best_trial(
        opts,
        lambda seed: _sweeps(X, None, 0.0, 0.0, opts, seed, use_text=True, use_sim=False),
    )


def symnmf(S, opts: FactorizeOptions) -> FactorizationResult:
    """Symmetric factorization of S via the split-copy subproblems."""
    S = _accept(S, "S")
    require_symmetric(S, what="S")
    n = S.shape[0]
    if opts.k > n:
        raise ValueError(f"k={opts.k} exceeds n={n}")
    beta = opts.beta if opts.beta is not None else max_abs(S)
    return _best_trial(
        opts,
        lambda seed: _sweeps(None, S, 1.0, beta, opts, seed, use_text=False, use_sim=True),
    )


def joint_nmf(X, S, opts: FactorizeOptions) -> FactorizationResult:
    """Joint factorization sharing H between the text and similarity views."""
    X = _accept(X, "X")
    S = _accept(S, "S")
    m, n = X.shape
    if S.shape != (n, n):
        raise ShapeMismatch(f"X has {n} columns but S is {S.shape[0]}x{S.shape[1]}")
    require_symmetric(S, what="S")
    if opts.k > min(m, n):
        raise ValueError(f"k={opts.k} exceeds min(m, n)={min(m, n)}")
    alpha = opts.alpha if opts.alpha is not None else default_alpha(X, S)
    beta = opts.beta if opts.beta is not None else default_beta(alpha, S)
    return _best_trial(
        opts,
        lambda seed: _sweeps(X, S, alpha, beta, opts, seed, use_text=True, use_sim=True),
    )


def hard_assign(H) -> np.ndarray:
    """Cluster of each column: row index of its largest coordinate.

    Ties go to the lowest row index, so the result is scale invariant
    and deterministic.
    """
    H = np.asarray(H, dtype=np.float64)
    if H.ndim != 2 or H.shape[0] < 1:
        raise ShapeMismatch(f"H must be k x n with k >= 1, got shape {H.shape}")
    return np.argmax(H, axis=0)


def write_result(result: FactorizationResult, out_dir) -> None:
    """Serialize factors as Matrix Market array files plus a sweep log."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if result.W is not None:
        write_matrix_market(out / "W.mtx", result.W)
    write_matrix_market(out / "H.mtx", result.H)
    if result.H_tilde is not None:
        write_matrix_market(out / "Htilde.mtx", result.H_tilde)
    with open(out / "objective.log", "w") as fh:
        for i, v in enumerate(result.objective_history, start=1):
            fh.write(f"{i}\t{v!r}\n")


# ---------------------------------------------------------------------------
# sweep engine

def _accept(M, name):
    if sparse.issparse(M):
        M = as_csc(M)
        bad = M.data.size and M.data.min() < 0
    else:
        M = np.asarray(M, dtype=np.float64)
        if M.ndim != 2:
            raise ShapeMismatch(f"{name} must be 2-d, got shape {M.shape}")
        bad = M.size and M.min() < 0
    if bad:
        raise ValueError(f"{name} must be nonnegative")
    return M


def _best_trial(opts, run_one):
    best = None
    for t in range(opts.trials):
        r = run_one(opts.seed + t)
        if best is None or r.objective_history[-1] < best.objective_history[-1]:
            best = r
    return best


def _sweeps(X, S, alpha, beta, opts, seed, use_text, use_sim):
    rng = np.random.default_rng(seed)
    n = X.shape[1] if use_text else S.shape[0]
    k = opts.k
    W = rng.random((X.shape[0], k)) if use_text else None
    H = rng.random((k, n))
    Ht = rng.random((k, n)) if use_sim else None

    x_nsq = frobenius_norm_sq(X) if use_text else 0.0
    s_nsq = frobenius_norm_sq(S) if use_sim else 0.0
    objective = lambda b: _objective(
        x_nsq, s_nsq, X, S, W, H, Ht, alpha, b, use_text, use_sim
    )

    history: list[float] = []
    blocks: list[float] | None = [] if opts.track_blocks else None
    nls_opts = opts.nls
    beta_t = beta
    sweeps_run = 0
    for _ in range(opts.max_sweeps):
        sweeps_run += 1
        if use_text:
            W = _update_w(X, H, nls_opts)
            if blocks is not None:
                blocks.append(objective(beta_t))
        if use_sim and (alpha > 0.0 or beta_t > 0.0):
            Ht = _update_ht(S, H, alpha, beta_t, nls_opts)
            if blocks is not None:
                blocks.append(objective(beta_t))
        H = _update_h(X, S, W, Ht, alpha, beta_t, use_text, use_sim, nls_opts)
        if blocks is not None:
            blocks.append(objective(beta_t))
        f = objective(beta_t)
        history.append(f)
        if len(history) >= 2 and abs(f - history[-2]) / max(history[-2], STOP_FLOOR) < opts.rel_tol:
            break
        beta_t = beta_t * opts.beta_multiplier
    return FactorizationResult(
        W=W,
        H=H,
        H_tilde=Ht,
        objective_history=history,
        sweeps_run=sweeps_run,
        seed_used=seed,
        block_objective_history=blocks,
    )


def _update_w(X, H, nls_opts):
    # min over W >= 0 of ||H^T W^T - X^T||_F^2
    ata = H @ H.T
    atb = _mul_left(H, X)  # H X^T read as (X H^T)^T
    return nls_bpp_gram(ata, atb, nls_opts).T


def _update_ht(S, H, alpha, beta_t, nls_opts):
    # min over Ht >= 0 of alpha ||H^T Ht - S||_F^2 + beta ||Ht - H||_F^2
    k = H.shape[0]
    ata = None
    atb = None
    if alpha > 0.0:
        ata = alpha * (H @ H.T)
        atb = alpha * _mul_right(H, S)
    if beta_t > 0.0:
        eye = beta_t * np.eye(k)
        ata = eye if ata is None else ata + eye
        atb = beta_t * H if atb is None else atb + beta_t * H
    return nls_bpp_gram(ata, atb, nls_opts)


def _update_h(X, S, W, Ht, alpha, beta_t, use_text, use_sim, nls_opts):
    # min over H >= 0 of the full stacked system: text rows, similarity
    # rows scaled by sqrt(alpha), tether rows scaled by sqrt(beta)
    ata = None
    atb = None
    if use_text:
        ata = W.T @ W
        atb = _wtx(W, X)
    if use_sim and alpha > 0.0:
        t = alpha * (Ht @ Ht.T)
        ata = t if ata is None else ata + t
        t = alpha * _mul_right(Ht, S)
        atb = t if atb is None else atb + t
    if use_sim and beta_t > 0.0:
        k = Ht.shape[0]
        t = beta_t * np.eye(k)
        ata = t if ata is None else ata + t
        t = beta_t * Ht
        atb = t if atb is None else atb + t
    return nls_bpp_gram(ata, atb, nls_opts)


def _wtx(W, X):
    # W^T X with X possibly sparse
    if sparse.issparse(X):
        return (X.T @ W).T
    return W.T @ X


def _mul_left(H, X):
    # H X^T with X possibly sparse
    if sparse.issparse(X):
        return (X @ H.T).T
    return H @ X.T


def _mul_right(H, S):
    # H S with S possibly sparse
    if sparse.issparse(S):
        return (S.T @ H.T).T
    return H @ S


def _text_obj(x_nsq, X, W, H):
    # ||X - W H||_F^2 via the gram identity; clamped against cancellation
    cross = float(np.sum(W * (X @ H.T)))
    gram = float(np.sum((W.T @ W) * (H @ H.T)))
    return max(x_nsq - 2.0 * cross + gram, 0.0)


def _sim_obj(s_nsq, S, Ht, H):
    # ||S - Ht^T H||_F^2 via the gram identity
    cross = float(np.sum(H * _mul_right(Ht, S)))
    gram = float(np.sum((Ht @ Ht.T) * (H @ H.T)))
    return max(s_nsq - 2.0 * cross + gram, 0.0)


def _objective(x_nsq, s_nsq, X, S, W, H, Ht, alpha, beta_t, use_text, use_sim):
    total = 0.0
    if use_text:
        total += _text_obj(x_nsq, X, W, H)
    if use_sim:
        if alpha != 0.0:
            total += alpha * _sim_obj(s_nsq, S, Ht, H)
        if beta_t != 0.0:
            d = Ht - H
            total += beta_t * float(np.vdot(d, d))
    return total


def _conform_text(X, W, H):
    X = _accept_any(X)
    W = np.asarray(W, dtype=np.float64)
    H = np.asarray(H, dtype=np.float64)
    if W.ndim != 2 or H.ndim != 2 or W.shape[1] != H.shape[0]:
        raise ShapeMismatch(f"W is {W.shape}, H is {H.shape}")
    if X.shape != (W.shape[0], H.shape[1]):
        raise ShapeMismatch(
            f"X is {X.shape} but W H is {W.shape[0]}x{H.shape[1]}"
        )
    return X, W, H


def _conform_sim(S, H):
    S = _accept_any(S)
    n = H.shape[1]
    if S.shape != (n, n):
        raise ShapeMismatch(f"S is {S.shape[0]}x{S.shape[1]} but H has {n} columns")
    return S


def _accept_any(M):
    if sparse.issparse(M):
        return as_csc(M)
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2:
        raise ShapeMismatch(f"expected a 2-d matrix, got shape {M.shape}")
    return M
