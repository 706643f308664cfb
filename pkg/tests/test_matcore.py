import numpy as np
import pytest

from barycenter_rooms_pkg.core.errors import NotPSDError, NotSymmetricError
from barycenter_rooms_pkg.core.matcore import (
    inv_sqrtm_pd,
    kron,
    sqrtm_psd,
    sym_eig,
    trace_sqrtm_psd,
    unvec,
    vec,
)

from .conftest import random_spd


class TestSymEig:
    @pytest.mark.parametrize("method", ["eigh", "jacobi"])
    def test_reconstructs_matrix(self, rng, method):
        for d in (1, 2, 5, 8):
            S = random_spd(rng, d)
            U, D = sym_eig(S, method=method)

            assert np.allclose(U @ np.diag(D) @ U.T, S, atol=1e-12)
            assert np.allclose(U.T @ U, np.eye(d), atol=1e-12)
            assert np.all(np.diff(D) <= 0.0)

    def test_jacobi_matches_eigh(self, rng):
        S = random_spd(rng, 6)

        assert np.allclose(sym_eig(S, "jacobi").D, sym_eig(S, "eigh").D, atol=1e-12)

    def test_indefinite_matrix_allowed(self):
        _, D = sym_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))

        assert np.allclose(D, [1.0, -1.0])

    def test_rejects_asymmetric(self):
        with pytest.raises(NotSymmetricError, match="not symmetric"):
            sym_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_unknown_method(self):
        with pytest.raises(ValueError, match="Unknown eigen method"):
            sym_eig(np.eye(2), method="qr")

    @pytest.mark.parametrize("method", ["eigh", "jacobi"])
    @pytest.mark.parametrize("a, b, c", [(2.0, 1.0, 3.0), (1.0, -0.5, 1.0), (4.0, 0.0, -1.0), (0.3, 2.0, -0.7)])
    def test_two_by_two_closed_form(self, method, a, b, c):
        U, D = sym_eig(np.array([[a, b], [b, c]]), method=method)
        radius = np.sqrt(((a - c) / 2.0) ** 2 + b**2)

        assert np.allclose(D, [(a + c) / 2.0 + radius, (a + c) / 2.0 - radius], atol=1e-12)
        for j in range(2):
            assert np.allclose(np.array([[a, b], [b, c]]) @ U[:, j], D[j] * U[:, j], atol=1e-12)


class TestSquareRoots:
    def test_sqrtm_squares_back(self, rng):
        S = random_spd(rng, 4)
        R = sqrtm_psd(S)

        assert np.allclose(R @ R, S, atol=1e-12)
        assert np.allclose(R, R.T)

    def test_sqrtm_of_singular_psd(self):
        S = np.array([[1.0, 1.0], [1.0, 1.0]])
        R = sqrtm_psd(S)

        assert np.allclose(R @ R, S, atol=1e-12)

    def test_small_negative_eigenvalues_clamped(self):
        S = np.diag([1.0, -5e-11])

        assert np.allclose(sqrtm_psd(S), np.diag([1.0, 0.0]))

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(NotPSDError, match="not PSD"):
            sqrtm_psd(np.diag([1.0, -1e-3]))

    def test_sqrtm_of_random_psd_matrices(self, rng):
        for d in range(1, 9):
            for rank in sorted({1, max(1, d // 2), d}):
                B = rng.standard_normal((d, rank))
                S = B @ B.T
                R = sqrtm_psd(S)

                assert np.allclose(R, R.T)
                assert np.allclose(R @ R, S, atol=1e-10 * max(1.0, np.abs(S).max()))
                assert np.linalg.eigvalsh(R).min() >= -1e-10

    def test_clamp_tolerance_scales_with_the_largest_eigenvalue(self):
        assert np.allclose(sqrtm_psd(np.diag([1e6, -5e-5])), np.diag([1e3, 0.0]))

        with pytest.raises(NotPSDError, match="not PSD"):
            sqrtm_psd(np.diag([1.0, -1e-9]))

    def test_inverse_sqrt(self, rng):
        S = random_spd(rng, 3)

        assert np.allclose(inv_sqrtm_pd(S) @ sqrtm_psd(S), np.eye(3), atol=1e-10)

    def test_inverse_sqrt_needs_definite(self):
        with pytest.raises(NotPSDError):
            inv_sqrtm_pd(np.diag([1.0, 0.0]))

    def test_trace_sqrt(self):
        assert trace_sqrtm_psd(np.diag([4.0, 9.0])) == pytest.approx(5.0)


class TestKronVec:
    def test_vec_identity(self, rng):
        A = rng.standard_normal((3, 2))
        X = rng.standard_normal((2, 4))
        B = rng.standard_normal((4, 5))

        assert np.allclose(vec(A @ X @ B), kron(B.T, A) @ vec(X))

    def test_vec_is_column_major(self):
        assert np.array_equal(vec([[1.0, 2.0], [3.0, 4.0]]), [1.0, 3.0, 2.0, 4.0])

    def test_unvec_inverts_vec(self, rng):
        M = rng.standard_normal((3, 4))

        assert np.array_equal(unvec(vec(M), 3, 4), M)

    def test_unvec_wrong_length(self):
        with pytest.raises(ValueError, match="cannot unvec"):
            unvec(np.zeros(5), 2, 2)
