"""Matrix helpers and Matrix Market round trips."""

import numpy as np
import pytest
from scipy import sparse

from jointnmf.errors import NotSymmetric, ShapeMismatch
from jointnmf.matrix import (
    as_csc,
    as_dense,
    frobenius_norm_sq,
    is_symmetric,
    max_abs,
    read_matrix_market,
    require_symmetric,
    write_matrix_market,
)


def test_frobenius_norm_sq_known_value():
    M = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert frobenius_norm_sq(M) == 30.0
    assert frobenius_norm_sq(sparse.csc_array(M)) == 30.0


def test_frobenius_norm_sq_sparse_dense_agree():
    rng = np.random.default_rng(0)
    for _ in range(20):
        M = rng.random((7, 5))
        M[M < 0.5] = 0.0
        d = frobenius_norm_sq(M)
        s = frobenius_norm_sq(sparse.csc_array(M))
        assert abs(d - s) <= 1e-12 * max(d, 1.0)


def test_max_abs():
    assert max_abs(np.array([[0.0, -3.0], [2.0, 1.0]])) == 3.0
    assert max_abs(sparse.csc_array(np.array([[0.0, 0.25]]))) == 0.25
    assert max_abs(sparse.csc_array((2, 2))) == 0.0
    assert max_abs(np.zeros((2, 2))) == 0.0


def test_is_symmetric():
    assert is_symmetric(np.eye(3))
    assert is_symmetric(sparse.csc_array(np.eye(3)))
    A = np.array([[0.0, 1.0], [1.0 + 5e-13, 0.0]])
    assert is_symmetric(A)
    B = np.array([[0.0, 1.0], [1.1, 0.0]])
    assert not is_symmetric(B)
    assert not is_symmetric(np.zeros((2, 3)))


def test_require_symmetric_errors():
    with pytest.raises(ShapeMismatch):
        require_symmetric(np.zeros((2, 3)))
    with pytest.raises(NotSymmetric):
        require_symmetric(np.array([[0.0, 1.0], [2.0, 0.0]]))
    require_symmetric(np.eye(2))


def test_as_dense_and_as_csc():
    M = np.array([[1, 0], [0, 2]], dtype=np.int64)
    D = as_dense(M)
    assert D.dtype == np.float64
    C = as_csc(M)
    assert sparse.issparse(C) and C.dtype == np.float64
    C2 = as_csc(sparse.coo_array(M))
    assert (C2.toarray() == D).all()


def test_sparse_round_trip_exact(tmp_path):
    rng = np.random.default_rng(1)
    M = sparse.random_array((9, 6), density=0.4, rng=rng, format="csc")
    M.data += 1e-9
    M.data[0] = 1e300
    M.data[-1] = 1e-300
    path = tmp_path / "m.mtx"
    write_matrix_market(path, M)
    back = read_matrix_market(path)
    assert sparse.issparse(back)
    assert back.shape == M.shape
    assert (back.toarray() == M.toarray()).all()


def test_dense_round_trip_exact(tmp_path):
    rng = np.random.default_rng(2)
    M = rng.random((4, 7))
    path = tmp_path / "d.mtx"
    write_matrix_market(path, M)
    back = read_matrix_market(path)
    assert isinstance(back, np.ndarray)
    assert (back == M).all()


def test_symmetric_write_expands_on_read(tmp_path):
    A = np.array([[2.0, 1.0, 0.0], [1.0, 0.0, 3.0], [0.0, 3.0, 0.0]])
    path = tmp_path / "s.mtx"
    write_matrix_market(path, sparse.csc_array(A), symmetric=True)
    text = path.read_text()
    assert "symmetric" in text.splitlines()[0]
    back = read_matrix_market(path)
    assert (back.toarray() == A).all()


def test_read_uses_one_based_coordinates(tmp_path):
    path = tmp_path / "c.mtx"
    path.write_text(
        "%%MatrixMarket matrix coordinate real general\n2 3 2\n1 1 5.0\n2 3 7.0\n"
    )
    M = read_matrix_market(path).toarray()
    assert M[0, 0] == 5.0 and M[1, 2] == 7.0
    assert M.sum() == 12.0


def test_empty_sparse_round_trip(tmp_path):
    M = sparse.csc_array((3, 4))
    path = tmp_path / "e.mtx"
    write_matrix_market(path, M)
    back = read_matrix_market(path)
    assert back.shape == (3, 4) and back.nnz == 0
