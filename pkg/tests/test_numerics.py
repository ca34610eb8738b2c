import numpy as np
import pytest
from hypothesis import given, strategies as st

from gaborlab.errors import InvalidInputError, SingularOperatorError
from gaborlab.numerics import hermitian_eigenvalues, is_hermitian, operator_norm, singular_values, solve_hpd


def test_eigenvalues_descending():
    assert np.allclose(hermitian_eigenvalues(np.diag([1.0, 3.0, 2.0])), [3, 2, 1])
    M = np.array([[2, 1j], [-1j, 2]])
    assert np.allclose(hermitian_eigenvalues(M), [3, 1])


def test_batched():
    M = np.stack([np.eye(2), 2 * np.eye(2)])
    assert np.allclose(hermitian_eigenvalues(M), [[1, 1], [2, 2]])
    assert singular_values(np.zeros((4, 3, 0))).shape == (4, 0)


def test_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(InvalidInputError):
        hermitian_eigenvalues(np.array([[np.inf]]))
    with pytest.raises(InvalidInputError):
        hermitian_eigenvalues(np.ones(3))
    assert not is_hermitian(np.ones((2, 3)))


def test_singular_values():
    assert np.allclose(singular_values(np.array([[3.0, 0], [0, -4.0]])), [4, 3])
    assert operator_norm(np.array([[0, 2], [0, 0]])) == pytest.approx(2)
    assert operator_norm(np.zeros((0, 0))) == 0.0


@given(st.integers(1, 6), st.integers(0, 2 ** 32))
def test_solve_hpd_roundtrip(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    M = X @ X.conj().T + n * np.eye(n)
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x = solve_hpd(M, b)
    assert np.abs(M @ x - b).max() < 1e-10 * max(1, np.abs(b).max())


def test_solve_hpd_singular():
    M = np.diag([1.0, 0.0])
    with pytest.raises(SingularOperatorError) as exc:
        solve_hpd(M, np.ones(2))
    assert exc.value.lambda_min == 0.0
    with pytest.raises(SingularOperatorError):
        solve_hpd(np.diag([1.0, -1.0]), np.ones(2))
