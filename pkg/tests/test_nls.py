"""Nonnegative least squares solver against an exhaustive oracle.

The oracle enumerates every support set, solves the unconstrained
problem on it, and keeps the best feasible candidate.  The problem is
convex, so the optimum's own support is among the candidates and the
enumeration finds the global minimum.
"""

import itertools

import numpy as np
import pytest

from jointnmf.errors import NonConvergence, SingularSystem
from jointnmf.nls import (
    NlsOptions,
    kkt_residual,
    kkt_residual_gram,
    nls_bpp,
    nls_bpp_gram,
)


def oracle_nnls(A, b):
    k = A.shape[1]
    best_obj = float(np.dot(b, b))
    best_x = np.zeros(k)
    for r in range(1, k + 1):
        for support in itertools.combinations(range(k), r):
            cols = list(support)
            sol, *_ = np.linalg.lstsq(A[:, cols], b, rcond=None)
            if np.any(sol < 0.0):
                continue
            x = np.zeros(k)
            x[cols] = sol
            resid = A @ x - b
            obj = float(np.dot(resid, resid))
            if obj < best_obj:
                best_obj, best_x = obj, x
    return best_obj, best_x


def objective(A, B, X):
    R = A @ X - B
    return float(np.sum(R * R))


def test_single_column_interior_solution():
    A = np.array([[1.0], [1.0]])
    x = nls_bpp(A, np.array([1.0, 2.0]))
    assert x.shape == (1,)
    assert abs(x[0] - 1.5) <= 1e-12


def test_negative_target_clamps_to_zero():
    A = np.array([[1.0], [1.0]])
    x = nls_bpp(A, np.array([-1.0, -2.0]))
    assert x[0] == 0.0


def test_identity_system_clips_negatives():
    x = nls_bpp(np.eye(2), np.array([3.0, -2.0]))
    assert x[0] == 3.0 and x[1] == 0.0


def test_matches_oracle_on_random_instances():
    rng = np.random.default_rng(42)
    for _ in range(60):
        A = rng.random((6, 4))
        B = rng.random((6, 3))
        neg = rng.permutation(B.size)[: B.size // 2]
        B.ravel()[neg] *= -1.0
        X = nls_bpp(A, B)
        assert np.all(X >= 0.0)
        for c in range(B.shape[1]):
            star, _ = oracle_nnls(A, B[:, c])
            got = objective(A, B[:, [c]], X[:, [c]])
            assert got <= star + 1e-8
        assert kkt_residual(A, B, X) <= 1e-10


def test_gram_form_agrees_with_factored_form():
    rng = np.random.default_rng(7)
    for _ in range(20):
        A = rng.random((8, 5))
        B = rng.standard_normal((8, 4))
        X1 = nls_bpp(A, B)
        X2 = nls_bpp_gram(A.T @ A, A.T @ B)
        assert np.allclose(X1, X2, atol=1e-9, rtol=0.0)
        assert kkt_residual_gram(A.T @ A, A.T @ B, X2) <= 1e-10


def test_columns_solve_independently():
    rng = np.random.default_rng(3)
    A = rng.random((7, 3))
    B = rng.standard_normal((7, 5))
    X = nls_bpp(A, B)
    for c in range(5):
        xc = nls_bpp(A, B[:, c])
        assert np.allclose(X[:, c], xc, atol=1e-12, rtol=0.0)


def test_shared_support_columns_solved_in_one_group():
    # many columns with the same sign structure exercise the grouped path
    rng = np.random.default_rng(11)
    A = rng.random((6, 3))
    base = rng.random(3)
    B = A @ np.column_stack([base * s for s in np.linspace(0.5, 2.0, 12)])
    X = nls_bpp(A, B)
    assert kkt_residual(A, B, X) <= 1e-10
    assert np.allclose(A @ X, B, atol=1e-9, rtol=0.0)


def test_exact_recovery_when_unconstrained_solution_feasible():
    rng = np.random.default_rng(5)
    A = rng.random((9, 4))
    X_true = rng.random((4, 3))
    B = A @ X_true
    X = nls_bpp(A, B)
    assert np.allclose(X, X_true, atol=1e-8, rtol=0.0)


def test_zero_rhs_gives_zero_solution():
    rng = np.random.default_rng(6)
    A = rng.random((5, 3))
    X = nls_bpp(A, np.zeros((5, 2)))
    assert X.shape == (3, 2)
    assert np.all(X == 0.0)


def test_non_convergence_when_pivot_budget_exhausted():
    rng = np.random.default_rng(8)
    A = rng.random((6, 4))
    B = rng.standard_normal((6, 2))
    with pytest.raises(NonConvergence):
        nls_bpp(A, B, NlsOptions(max_pivot_rounds=1))
    with pytest.raises(ValueError):
        NlsOptions(max_pivot_rounds=0)


def test_singular_system_reported():
    ata = np.zeros((2, 2))
    atb = np.array([[1.0], [1.0]])
    with pytest.raises(SingularSystem):
        nls_bpp_gram(ata, atb)


def test_ridge_rescues_mildly_singular_gram():
    # duplicated column: unconstrained solve is ambiguous but a ridge
    # retry keeps one representative
    a = np.array([[1.0], [2.0], [3.0]])
    A = np.hstack([a, a])
    b = (2.0 * a).ravel()
    x = nls_bpp(A, b)
    assert np.all(x >= 0.0)
    assert np.allclose(A @ x, b, atol=1e-6, rtol=0.0)


def test_kkt_residual_flags_violations():
    A = np.eye(2)
    B = np.array([[1.0], [1.0]])
    X_bad = np.array([[0.0], [0.0]])
    assert kkt_residual(A, B, X_bad) >= 1.0 - 1e-12
    X_good = np.array([[1.0], [1.0]])
    assert kkt_residual(A, B, X_good) <= 1e-12


def test_1d_rhs_round_trip_shape():
    rng = np.random.default_rng(9)
    A = rng.random((5, 2))
    b = rng.standard_normal(5)
    x = nls_bpp(A, b)
    assert x.ndim == 1 and x.shape == (2,)
