import numpy as np
import pytest

from linalg.hermitian import hermitian_eigenvalues, is_psd, partial_transpose, principal_submatrix

from .family import (
    FamilyParams,
    QubitQuditParams,
    assemble,
    assemble_qubit_qudit,
    block_indices,
    family_from_matrix,
    pattern_mask,
    sample_qubit_qudit,
    sample_random,
    validate,
)
from .named import (
    IsotropicSpec,
    WernerSpec,
    embed_werner,
    flip_operator,
    isotropic,
    isotropic_werner_duality,
    match_isotropic,
    match_werner,
    max_entangled_projector,
    phi_to_eps,
    werner,
    werner_eps_range,
    werner_parameter,
)


def two_qubit(x00, x11, x01, a, b):
    return FamilyParams(
        dA=2, dB=2, X=[[x00, x01], [np.conj(x01), x11]], M=[[], [[b]]], N=[[[a]], []]
    )


@pytest.fixture
def sample_pairs():
    return [(dA, dB) for dA in (2, 3, 4) for dB in range(2, 7) if dB >= dA]


class TestFamilyParams:
    def test_dA_larger_than_dB_rejected(self):
        with pytest.raises(ValueError):
            FamilyParams(3, 2, np.eye(3), [[], [[1]], np.eye(2)], [[[1]], [], []])

    def test_block_dimension_mismatch(self):
        with pytest.raises(ValueError):
            FamilyParams(2, 2, np.eye(2), [[], np.eye(2)], [[[1]], []])

    def test_non_hermitian_block_rejected(self):
        with pytest.raises(ValueError):
            FamilyParams(2, 3, [[0, 1], [0, 0]], [[], [[1]]], [np.eye(2), [[1]]])

    def test_empty_blocks_for_two_qubits(self):
        p = two_qubit(0.25, 0.25, 0, 0.25, 0.25)
        assert p.M[0].shape == (0, 0)
        assert p.N[1].shape == (0, 0)


class TestAssemble:
    def test_worked_example_placement(self, worked_example_params, worked_example_rho):
        p, rho = worked_example_params, worked_example_rho
        X = p.X
        for k, index in enumerate([0, 5, 10, 15]):
            assert rho[index, index] == X[k, k]
        assert rho[1, 4] == X[0, 1]
        assert rho[2, 8] == X[0, 2]
        assert rho[3, 12] == X[0, 3]
        assert rho[6, 9] == X[1, 2]
        assert rho[7, 13] == X[1, 3]
        assert rho[11, 14] == X[2, 3]
        assert rho[4, 1] == np.conj(X[0, 1])
        np.testing.assert_array_equal(rho[1:4, 1:4], p.N[0])
        assert rho[4, 4] == p.M[1][0, 0]
        np.testing.assert_array_equal(rho[6:8, 6:8], p.N[1])
        np.testing.assert_array_equal(rho[8:10, 8:10], p.M[2])
        assert rho[11, 11] == p.N[2][0, 0]
        np.testing.assert_array_equal(rho[12:15, 12:15], p.M[3])

    def test_worked_example_zero_outside_pattern(self, worked_example_params, worked_example_rho):
        mask = pattern_mask(worked_example_params)
        assert np.all(worked_example_rho[~mask] == 0)
        assert mask.sum() == 16 + 14 + 14

    def test_trace_is_sum_of_placed_entries(self, worked_example_params, worked_example_rho):
        p = worked_example_params
        expected = np.trace(p.X) + sum(np.trace(b) for b in p.M + p.N)
        assert np.trace(worked_example_rho) == pytest.approx(expected, abs=1e-15)

    def test_diagonal_input_gives_diagonal_state(self):
        p = FamilyParams(
            2, 3, np.diag([0.1, 0.2]), [[], [[0.1]]], [np.diag([0.2, 0.1]), [[0.3]]]
        )
        rho = assemble(p)
        np.testing.assert_array_equal(rho, np.diag(np.diag(rho)))

    def test_two_qubit_matrix(self):
        rho = assemble(two_qubit(1 / 8, 1 / 8, 1 / 4, 3 / 8, 3 / 8))
        expected = np.array(
            [
                [1 / 8, 0, 0, 0],
                [0, 3 / 8, 1 / 4, 0],
                [0, 1 / 4, 3 / 8, 0],
                [0, 0, 0, 1 / 8],
            ]
        )
        np.testing.assert_array_equal(rho, expected)

    def test_principal_submatrices_recover_blocks(self):
        p = sample_random(3, 5, seed=21)
        rho = assemble(p)
        for k in range(p.dA):
            if k:
                m_rows = list(range(k * p.dB, k * p.dB + k))
                np.testing.assert_array_equal(principal_submatrix(rho, m_rows), p.M[k])
            n_rows = list(range(k * p.dB + k + 1, (k + 1) * p.dB))
            np.testing.assert_array_equal(principal_submatrix(rho, n_rows), p.N[k])

    def test_family_from_matrix_round_trip(self, worked_example_params, worked_example_rho):
        p = family_from_matrix(worked_example_rho, 4, 4)
        np.testing.assert_array_equal(assemble(p), worked_example_rho)
        np.testing.assert_array_equal(p.X, worked_example_params.X)

    def test_family_from_matrix_rejects_dense(self):
        rho = np.full((4, 4), 0.25)
        with pytest.raises(ValueError):
            family_from_matrix(rho, 2, 2)


class TestQubitQudit:
    def test_matches_two_qubit_family(self):
        q = QubitQuditParams(2, 0.1, 0.2, 0.05 - 0.03j, [[0.3]], [[0.4]])
        np.testing.assert_array_equal(
            assemble_qubit_qudit(q), assemble(two_qubit(0.1, 0.2, 0.05 - 0.03j, 0.3, 0.4))
        )
        np.testing.assert_array_equal(assemble(q.as_family()), assemble_qubit_qudit(q))

    def test_qubit_qutrit_layout(self):
        A = [[0.2, 0.01j], [-0.01j, 0.15]]
        B = [[0.18, 0.02], [0.02, 0.17]]
        rho = assemble_qubit_qudit(QubitQuditParams(3, 0.1, 0.2, 0.07, A, B))
        assert rho[0, 0] == 0.1
        assert rho[5, 5] == 0.2
        assert rho[2, 3] == 0.07
        assert rho[3, 2] == 0.07
        np.testing.assert_array_equal(rho[1:3, 1:3], A)
        np.testing.assert_array_equal(rho[3:5, 3:5], B)
        assert np.count_nonzero(rho) == 2 + 2 + 4 + 4

    def test_block_indices(self):
        q = sample_qubit_qudit(4, seed=0)
        indices = block_indices(q)
        assert indices.x == [0, 7]
        assert indices.n[0] == [1, 2, 3]
        assert indices.m[1] == [4, 5, 6]

    def test_uncoupled_is_block_diagonal(self):
        q = sample_qubit_qudit(4, seed=3, entanglement_bias=0.0)
        rho = assemble_qubit_qudit(q)
        assert np.all(rho[:4, 4:] == 0)

    def test_as_family_needs_two_qubits(self):
        with pytest.raises(ValueError):
            sample_qubit_qudit(3, seed=1).as_family()


class TestValidate:
    def test_maximally_mixed(self):
        report = validate(np.eye(6) / 6)
        assert report.overall
        assert report.pattern_ok is None

    def test_two_qubit_valid(self):
        report = validate(two_qubit(1 / 8, 1 / 8, 1 / 4, 3 / 8, 3 / 8))
        assert report.overall
        assert report.pattern_ok
        assert report.min_eigenvalue == pytest.approx(1 / 8, abs=1e-12)

    def test_two_qubit_not_psd(self):
        report = validate(two_qubit(1 / 8, 1 / 8, 1 / 4, 1 / 8, 1 / 8))
        assert not report.psd
        assert not report.overall
        assert report.min_eigenvalue == pytest.approx(-1 / 8, abs=1e-12)

    def test_trace_failure(self):
        report = validate(np.eye(4) / 2)
        assert report.psd
        assert not report.trace_ok
        assert not report.overall

    def test_non_hermitian_reported(self):
        report = validate([[0.5, 0.3], [0.0, 0.5]])
        assert not report.hermitian
        assert not report.overall

    def test_worked_example(self, worked_example_params):
        assert validate(worked_example_params).overall


class TestSampleRandom:
    def test_deterministic(self):
        first, second = sample_random(3, 4, seed=7), sample_random(3, 4, seed=7)
        np.testing.assert_array_equal(first.X, second.X)
        for a, b in zip(first.M + first.N, second.M + second.N):
            np.testing.assert_array_equal(a, b)

    def test_zero_bias_gives_diagonal_x(self):
        p = sample_random(3, 4, seed=2, entanglement_bias=0.0)
        np.testing.assert_array_equal(p.X, np.diag(np.diag(p.X)))

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            sample_random(4, 3, seed=0)
        with pytest.raises(ValueError):
            sample_random(2, 2, seed=0, entanglement_bias=1.5)

    @pytest.mark.parametrize("seed", range(10))
    def test_valid_qutrit_ququart(self, seed):
        assert validate(sample_random(3, 4, seed=seed)).overall

    def test_spectrum_finite_for_tiny_couplings(self):
        rho = assemble(sample_random(3, 6, seed=80))
        values = hermitian_eigenvalues(rho)
        assert np.all(np.isfinite(values))
        np.testing.assert_allclose(values, np.linalg.eigvalsh(rho), atol=1e-10)
        assert is_psd(rho).is_psd

    def test_qubit_qudit_valid(self):
        for dB in range(2, 7):
            assert validate(sample_qubit_qudit(dB, seed=dB)).overall

    @pytest.mark.slow
    def test_many_samples_valid(self, sample_pairs):
        for seed in range(500):
            dA, dB = sample_pairs[seed % len(sample_pairs)]
            p = sample_random(dA, dB, seed=seed)
            report = validate(p)
            assert report.overall, (dA, dB, seed)
            assert report.pattern_ok


class TestNamedStates:
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_flip_squares_to_identity(self, d):
        F = flip_operator(d)
        np.testing.assert_array_equal(F @ F, np.eye(d * d))
        np.testing.assert_array_equal(F.T, F)
        assert np.trace(F) == d

    def test_flip_two_qubits_swaps_middle(self):
        expected = np.eye(4)[[0, 2, 1, 3]]
        np.testing.assert_array_equal(flip_operator(2), expected)

    def test_flip_spectrum(self):
        values = hermitian_eigenvalues(flip_operator(3))
        assert np.sum(values < 0) == 3
        np.testing.assert_allclose(values, [-1] * 3 + [1] * 6, atol=1e-12)

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_projector(self, d):
        P = max_entangled_projector(d)
        np.testing.assert_allclose(P @ P, P, atol=1e-14)
        assert np.trace(P) == pytest.approx(1.0, abs=1e-15)
        np.testing.assert_array_equal(partial_transpose(P, d, d), flip_operator(d) / d)

    def test_werner_special_points(self):
        np.testing.assert_array_equal(werner(WernerSpec(3, 0)), np.eye(9) / 9)
        singlet = werner(WernerSpec(2, -1))
        np.testing.assert_allclose(singlet, (np.eye(4) - flip_operator(2)) / 2, atol=1e-15)

    def test_isotropic_special_points(self):
        np.testing.assert_array_equal(isotropic(IsotropicSpec(3, 0)), np.eye(9) / 9)
        np.testing.assert_allclose(
            isotropic(IsotropicSpec(3, 1)), max_entangled_projector(3), atol=1e-15
        )

    def test_werner_ppt_boundary_two_qubits(self):
        pt = partial_transpose(werner(WernerSpec(2, -1 / 3)), 2, 2)
        assert hermitian_eigenvalues(pt)[0] == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_werner_ppt_iff_above_threshold(self, d):
        lo, hi = werner_eps_range(d)
        threshold = -1 / (d * d - 1)
        for eps in np.linspace(lo, hi, 50):
            pt = partial_transpose(werner(WernerSpec(d, eps)), d, d)
            is_ppt = hermitian_eigenvalues(pt)[0] >= -1e-10
            assert is_ppt == (eps >= threshold - 1e-10)

    def test_isotropic_validity_boundary(self):
        rho = isotropic(IsotropicSpec(3, -1 / 8))
        assert hermitian_eigenvalues(rho)[0] == pytest.approx(0.0, abs=1e-12)
        assert not IsotropicSpec(3, -0.2).is_valid

    @pytest.mark.parametrize(
        "phi,d,eps", [(0.5, 2, 0.0), (1 / 3, 3, 0.0), (1.0, 2, 1 / 3), (-1.0, 2, -1.0)]
    )
    def test_phi_to_eps(self, phi, d, eps):
        assert phi_to_eps(phi, d) == pytest.approx(eps, abs=1e-15)

    @pytest.mark.parametrize("phi", [-0.8, 0.1, 0.5, 0.9])
    def test_phi_round_trip(self, phi):
        rho = werner(WernerSpec(2, phi_to_eps(phi, 2)))
        assert np.trace(flip_operator(2) @ rho).real == pytest.approx(phi, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_embed_round_trip(self, d):
        lo, hi = werner_eps_range(d)
        for eps in np.linspace(lo, hi, 20):
            p = embed_werner(d, eps)
            np.testing.assert_allclose(assemble(p), werner(WernerSpec(d, eps)), atol=1e-12)
            assert werner_parameter(p) == pytest.approx(eps, abs=1e-12)

    def test_embed_diagonal_from_matrix(self):
        d, eps = 3, 0.2
        p = embed_werner(d, eps)
        np.testing.assert_allclose(np.diag(p.X), (1 - eps) / d**2 + eps / d, atol=1e-15)
        assert p.X[0, 1] == pytest.approx(eps / d)
        np.testing.assert_allclose(p.N[0], np.eye(2) * (1 - eps) / d**2, atol=1e-15)

    def test_embed_zero(self):
        p = embed_werner(3, 0.0)
        np.testing.assert_array_equal(p.X, np.eye(3) / 9)

    def test_embed_out_of_range(self):
        with pytest.raises(ValueError):
            embed_werner(2, 0.5)

    @pytest.mark.parametrize("d,eps", [(2, 1.0), (3, 0.0), (4, 0.3), (3, -0.1)])
    def test_duality_exact(self, d, eps):
        matches, deviation = isotropic_werner_duality(d, eps)
        assert matches
        assert deviation == 0.0

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_werner_transposes_to_isotropic(self, d):
        np.testing.assert_array_equal(
            partial_transpose(werner(WernerSpec(d, 0.2)), d, d),
            isotropic(IsotropicSpec(d, 0.2)),
        )

    def test_match_werner_and_isotropic(self):
        assert match_werner(werner(WernerSpec(3, -0.3)), 3) == pytest.approx(-0.3)
        assert match_werner(np.eye(9) / 9, 3) == pytest.approx(0.0, abs=1e-14)
        assert match_isotropic(isotropic(IsotropicSpec(2, 0.6)), 2) == pytest.approx(0.6)
        assert match_werner(isotropic(IsotropicSpec(2, 0.6)), 2) is None

    def test_spec_rejects_small_dimension(self):
        with pytest.raises(ValueError):
            WernerSpec(1, 0.0)
