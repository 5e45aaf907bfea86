import numpy as np
import pytest

from .hermitian import (
    EigensolverError,
    NotHermitianError,
    hermitian,
    hermitian_eigenvalues,
    hermitian_eigh,
    is_psd,
    partial_transpose,
    principal_submatrix,
    tensor_product,
)
from . import hermitian as hermitian_module


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


def random_psd(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return g.conj().T @ g


def characteristic_roots(h, grid=4001):
    """Eigenvalues as roots of det(tI - H), located on a grid and bisected."""
    coefficients = np.real(np.poly(h))
    radius = float(np.max(np.sum(np.abs(h), axis=1))) + 1.0
    ts = np.linspace(-radius, radius, grid)
    values = np.polyval(coefficients, ts)
    roots = []
    for lo, hi, f_lo, f_hi in zip(ts, ts[1:], values, values[1:]):
        if f_lo == 0.0:
            roots.append(lo)
            continue
        if f_lo * f_hi > 0:
            continue
        for _ in range(200):
            mid = (lo + hi) / 2
            f_mid = np.polyval(coefficients, mid)
            if f_lo * f_mid <= 0:
                hi = mid
            else:
                lo, f_lo = mid, f_mid
        roots.append((lo + hi) / 2)
    return np.array(roots)


class TestHermitian:
    def test_repairs_tiny_asymmetry(self):
        h = np.array([[1.0, 0.5 + 1e-15], [0.5, 2.0]])
        repaired = hermitian(h)
        assert repaired[0, 1] == np.conj(repaired[1, 0])

    def test_rejects_large_asymmetry(self):
        with pytest.raises(NotHermitianError):
            hermitian([[1.0, 0.5], [0.4, 2.0]])

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            hermitian([[np.nan, 0.0], [0.0, 1.0]])

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            hermitian(np.zeros((2, 3)))


class TestHermitianEigenvalues:
    def test_identity(self):
        assert hermitian_eigenvalues(np.eye(3)).tolist() == [1.0, 1.0, 1.0]

    def test_antidiagonal_block(self):
        x = 0.3 + 0.4j
        values = hermitian_eigenvalues([[0, x], [np.conj(x), 0]])
        np.testing.assert_allclose(values, [-0.5, 0.5], atol=1e-14)

    def test_matches_characteristic_polynomial(self):
        rng = np.random.default_rng(11)
        h = random_hermitian(rng, 3)
        np.testing.assert_allclose(
            hermitian_eigenvalues(h), characteristic_roots(h), atol=1e-9
        )

    @pytest.mark.parametrize("dim", [1, 2, 5, 12, 24])
    def test_matches_lapack(self, dim):
        rng = np.random.default_rng(dim)
        h = random_hermitian(rng, dim)
        np.testing.assert_allclose(
            hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-10
        )

    def test_sum_equals_trace(self):
        rng = np.random.default_rng(3)
        for dim in range(1, 10):
            h = random_hermitian(rng, dim)
            trace = np.trace(h).real
            assert np.sum(hermitian_eigenvalues(h)) == pytest.approx(
                trace, rel=1e-10, abs=1e-10
            )

    def test_permutation_similarity(self):
        rng = np.random.default_rng(5)
        h = random_hermitian(rng, 8)
        perm = rng.permutation(8)
        permuted = h[np.ix_(perm, perm)]
        np.testing.assert_allclose(
            hermitian_eigenvalues(h), hermitian_eigenvalues(permuted), atol=1e-10
        )

    def test_eigenvectors_reconstruct(self):
        rng = np.random.default_rng(8)
        h = random_hermitian(rng, 6)
        values, vectors = hermitian_eigh(h)
        assert np.linalg.norm(h @ vectors - vectors * values) <= 1e-10 * np.linalg.norm(h)
        np.testing.assert_allclose(vectors.conj().T @ vectors, np.eye(6), atol=1e-10)

    def test_non_convergence_is_reported(self, monkeypatch):
        monkeypatch.setattr(hermitian_module, "JACOBI_MAX_SWEEPS", 0)
        with pytest.raises(EigensolverError) as excinfo:
            hermitian_eigenvalues([[1.0, 0.5], [0.5, 2.0]])
        assert excinfo.value.residual > 0
        assert excinfo.value.sweeps == 0

    def test_subnormal_coupling(self):
        h = [[1.0, 3e-313, 0.0], [3e-313, 2.0, 0.5], [0.0, 0.5, 3.0]]
        values = hermitian_eigenvalues(h)
        assert np.all(np.isfinite(values))
        np.testing.assert_allclose(values, [1.0, 2.5 - np.sqrt(0.5), 2.5 + np.sqrt(0.5)], atol=1e-12)
        check = is_psd(h)
        assert check.is_psd
        assert check.min_eigenvalue == pytest.approx(1.0)

    def test_subnormal_complex_coupling(self):
        h = np.diag([0.0, 0.0, 1.0]).astype(complex)
        h[0, 1], h[1, 0] = 3e-313j, -3e-313j
        values = hermitian_eigenvalues(h)
        assert np.all(np.isfinite(values))
        np.testing.assert_allclose(values, [0.0, 0.0, 1.0], atol=1e-300)

    def test_divergence_is_reported(self, monkeypatch):
        def poison(a, v, p, q):
            a[p, q] = a[q, p] = np.nan

        monkeypatch.setattr(hermitian_module, "_rotate", poison)
        with pytest.raises(EigensolverError) as excinfo:
            hermitian_eigenvalues([[1.0, 0.5], [0.5, 2.0]])
        assert excinfo.value.sweeps == 1


class TestIsPsd:
    def test_zero_matrix(self):
        assert is_psd(np.zeros((3, 3)), 1e-10) == (True, 0.0)

    def test_indefinite(self):
        check = is_psd([[1, 2], [2, 1]], 1e-10)
        assert not check.is_psd
        assert check.min_eigenvalue == pytest.approx(-1.0)

    def test_diagonal_block(self):
        check = is_psd(np.diag([1 / 9, 1 / 9, 1 / 9]), 1e-10)
        assert check.is_psd
        assert check.min_eigenvalue == pytest.approx(1 / 9)

    def test_negative_tolerance_rejected(self):
        with pytest.raises(ValueError):
            is_psd(np.eye(2), -1.0)


class TestPrincipalSubmatrix:
    def test_all_indices(self):
        rng = np.random.default_rng(1)
        h = random_hermitian(rng, 4)
        np.testing.assert_array_equal(principal_submatrix(h, range(4)), h)

    def test_worked_example_blocks(self, worked_example_rho):
        a_block = principal_submatrix(worked_example_rho, [1, 2, 3])
        np.testing.assert_array_equal(a_block, worked_example_rho[1:4, 1:4])
        assert principal_submatrix(worked_example_rho, [4]).tolist() == [
            [worked_example_rho[4, 4]]
        ]

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            principal_submatrix(np.eye(3), [0, 3])

    def test_not_increasing(self):
        with pytest.raises(ValueError):
            principal_submatrix(np.eye(3), [2, 1])

    def test_preserves_psd(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            dim = int(rng.integers(2, 7))
            h = random_psd(rng, dim)
            size = int(rng.integers(1, dim + 1))
            indices = np.sort(rng.choice(dim, size=size, replace=False))
            assert is_psd(principal_submatrix(h, indices)).is_psd


class TestTensorProduct:
    def test_identities(self):
        np.testing.assert_array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))

    def test_projector(self):
        block = np.array([[1, 2j], [3, 4]])
        product = tensor_product(np.diag([1, 0]), block)
        expected = np.zeros((4, 4), dtype=complex)
        expected[:2, :2] = block
        np.testing.assert_array_equal(product, expected)

    def test_trace_multiplies(self):
        rng = np.random.default_rng(4)
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert np.trace(tensor_product(a, b)) == pytest.approx(np.trace(a) * np.trace(b))

    def test_associative(self):
        rng = np.random.default_rng(6)
        a, b, c = (
            rng.integers(-3, 4, size=(n, n)) + 1j * rng.integers(-3, 4, size=(n, n))
            for n in (2, 3, 2)
        )
        np.testing.assert_array_equal(
            tensor_product(tensor_product(a, b), c),
            tensor_product(a, tensor_product(b, c)),
        )

    def test_partial_transpose_of_product(self):
        a = np.array([[0.7, 0.2j], [-0.2j, 0.3]])
        b = np.array([[0.5, 0.1 - 0.3j, 0.0], [0.1 + 0.3j, 0.25, 0.2], [0.0, 0.2, 0.25]])
        np.testing.assert_array_equal(
            partial_transpose(tensor_product(a, b), 2, 3), tensor_product(a, b.T)
        )

    def test_partial_transpose_moves_coupling(self):
        rho = np.zeros((4, 4))
        rho[1, 2] = rho[2, 1] = 0.5
        pt = partial_transpose(rho, 2, 2)
        assert pt[0, 3] == pt[3, 0] == 0.5
        assert pt[1, 2] == 0.0
