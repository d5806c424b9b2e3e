import numpy as np
import pytest
import scipy.linalg

from tlsbath.linalg import (
    KernelDimensionError,
    SingularMatrixError,
    eigenpairs,
    eigenvalues,
    expm_apply,
    null_vector,
    solve_linear,
)


def _random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_solve_linear_matches_direct_inverse():
    rng = np.random.default_rng(7)
    for n in (2, 3, 5, 12):
        a = _random_complex(rng, (n, n)) + 3.0 * np.eye(n)
        b = _random_complex(rng, n)
        x = solve_linear(a, b)
        assert np.allclose(a @ x, b, rtol=1e-12, atol=1e-14)


def test_solve_linear_rejects_singular():
    a = np.array([[1.0, 2.0], [2.0, 4.0]], dtype=complex)
    with pytest.raises(SingularMatrixError):
        solve_linear(a, np.ones(2, dtype=complex))


def test_solve_linear_rejects_nearly_singular_scaled():
    # scale invariance of the pivot check: tiny but well-conditioned is fine
    a = 1e-30 * np.eye(3, dtype=complex)
    x = solve_linear(a, np.ones(3) * 1e-30)
    assert np.allclose(x, 1.0)


def test_eigenvalues_known_spectrum():
    d = np.diag([1.0 + 2.0j, -3.0, 0.5j])
    rng = np.random.default_rng(3)
    v = _random_complex(rng, (3, 3)) + 2 * np.eye(3)
    a = v @ d @ np.linalg.inv(v)
    got = np.sort_complex(eigenvalues(a))
    want = np.sort_complex(np.diag(d))
    assert np.allclose(got, want, atol=1e-10)


def test_eigenpairs_residuals():
    rng = np.random.default_rng(11)
    a = _random_complex(rng, (6, 6))
    vals, vecs = eigenpairs(a)
    for k in range(6):
        assert np.linalg.norm(a @ vecs[:, k] - vals[k] * vecs[:, k]) < 1e-9 * np.linalg.norm(a, np.inf)


def test_expm_apply_matches_dense():
    rng = np.random.default_rng(5)
    a = _random_complex(rng, (8, 8))
    v = _random_complex(rng, 8)
    for t in (0.0, 0.3, 2.0):
        got = expm_apply(a, v, t)
        want = scipy.linalg.expm(a * t) @ v
        assert np.allclose(got, want, rtol=1e-10, atol=1e-12)


def test_expm_apply_large_dimension_path():
    # above the dense cutoff the Krylov branch must agree with the
    # closed form for a diagonal generator
    n = 150
    diag = -np.linspace(0.1, 3.0, n) + 0.4j
    a = np.diag(diag)
    v = np.ones(n, dtype=complex)
    got = expm_apply(a, v, 1.7)
    assert np.allclose(got, np.exp(diag * 1.7), rtol=1e-9, atol=1e-12)


def test_expm_apply_rejects_negative_time():
    a = np.eye(2, dtype=complex)
    with pytest.raises(ValueError):
        expm_apply(a, np.ones(2), -1.0)


def test_null_vector_recovers_kernel():
    rng = np.random.default_rng(13)
    # build a rank-3 4x4 with one known kernel direction
    k = _random_complex(rng, 4)
    k /= np.linalg.norm(k)
    projector = np.eye(4) - np.outer(k, k.conj())
    a = np.vstack([_random_complex(rng, (3, 4)), np.zeros(4)]) @ projector
    v = null_vector(a)
    assert np.linalg.norm(a @ v) < 1e-10
    assert abs(abs(v @ k.conj()) - 1.0) < 1e-8


def test_null_vector_full_rank_raises():
    with pytest.raises(KernelDimensionError):
        null_vector(np.eye(3, dtype=complex))


def test_null_vector_degenerate_kernel_raises():
    a = np.zeros((3, 3), dtype=complex)
    a[0, 0] = 1.0
    with pytest.raises(KernelDimensionError):
        null_vector(a)
