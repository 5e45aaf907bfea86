import numpy as np
import pytest

from linalg.hermitian import hermitian_eigenvalues, is_psd
from states.family import (
    FamilyParams,
    QubitQuditParams,
    assemble,
    sample_qubit_qudit,
    sample_random,
    validate,
)
from states.named import (
    IsotropicSpec,
    WernerSpec,
    embed_werner,
    isotropic,
    werner,
    werner_eps_range,
)

from .choices import Reason, Verdict, XPattern
from .reorder import (
    BasisPermutation,
    apply_permutation,
    diagonal_blocks,
    subspace_permutation,
    verify_block_diagonal,
)
from .separability import (
    NotSimplySeparableError,
    classify,
    classify_dense,
    decompose_simply_separable,
    is_simply_separable,
    product_hull,
    subspace_partition,
    x_pattern,
)
from .transpose import (
    BlockSpectrum,
    negativity,
    partial_transpose,
    pt_block_spectrum,
    two_qubit_negativity,
    verify_direct_sum,
)

SAMPLE_PAIRS = [(dA, dB) for dA in (2, 3, 4) for dB in range(2, 7) if dB >= dA]


def two_qubit(x00, x11, x01, a=3 / 8, b=3 / 8):
    return FamilyParams(
        dA=2, dB=2, X=[[x00, x01], [np.conj(x01), x11]], M=[[], [[b]]], N=[[[a]], []]
    )


def family_with_x(X, dB=None):
    """Family member with the given X and maximally mixed M, N blocks of weight 0.1 each."""
    dA = len(X)
    dB = dB or dA
    return FamilyParams(
        dA,
        dB,
        X,
        [0.1 * np.eye(k) / max(k, 1) if k else [] for k in range(dA)],
        [0.1 * np.eye(dB - 1 - k) / (dB - 1 - k) if dB - 1 - k else [] for k in range(dA)],
    )


def seeded_samples(count, entanglement_bias=0.5):
    for seed in range(count):
        dA, dB = SAMPLE_PAIRS[seed % len(SAMPLE_PAIRS)]
        yield sample_random(dA, dB, seed=seed, entanglement_bias=entanglement_bias)


def block_diagonal_state(rng, dA, dB):
    blocks = []
    for _ in range(dA):
        g = rng.normal(size=(dB, dB)) + 1j * rng.normal(size=(dB, dB))
        blocks.append(g.conj().T @ g)
    rho = np.zeros((dA * dB, dA * dB), dtype=np.complex128)
    for i, block in enumerate(blocks):
        rho[i * dB : (i + 1) * dB, i * dB : (i + 1) * dB] = block
    return rho / np.trace(rho).real


class TestPartialTranspose:
    def test_involution(self):
        rng = np.random.default_rng(0)
        rho = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        once = partial_transpose(rho, 2, 3)
        np.testing.assert_array_equal(partial_transpose(once, 2, 3), rho)
        assert np.trace(once) == np.trace(rho)

    def test_block_formula(self):
        rng = np.random.default_rng(1)
        rho = rng.normal(size=(6, 6))
        pt = partial_transpose(rho, 3, 2)
        for i in range(3):
            for j in range(3):
                np.testing.assert_array_equal(
                    pt[2 * i : 2 * i + 2, 2 * j : 2 * j + 2],
                    rho[2 * i : 2 * i + 2, 2 * j : 2 * j + 2].T,
                )

    def test_product_state(self):
        a = np.array([[0.6, 0.1j], [-0.1j, 0.4]])
        b = np.array([[0.5, 0.2 + 0.1j, 0], [0.2 - 0.1j, 0.3, 0.05], [0, 0.05, 0.2]])
        np.testing.assert_array_equal(
            partial_transpose(np.kron(a, b), 2, 3), np.kron(a, b.T)
        )

    def test_worked_example_moves_x_to_diagonal_span(self, worked_example_params, worked_example_rho):
        pt = partial_transpose(worked_example_rho, 4, 4)
        diagonal = [0, 5, 10, 15]
        np.testing.assert_array_equal(pt[np.ix_(diagonal, diagonal)], worked_example_params.X)
        np.testing.assert_array_equal(pt[1:4, 1:4], worked_example_params.N[0].T)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            partial_transpose(np.eye(6), 2, 2)

    def test_hermitian_preserved(self, worked_example_rho):
        pt = partial_transpose(worked_example_rho, 4, 4)
        np.testing.assert_array_equal(pt, pt.conj().T)


class TestBlockSpectrum:
    def test_worked_example_union(self, worked_example_params, worked_example_rho):
        p = worked_example_params
        spectrum = pt_block_spectrum(p)
        assert len(spectrum.values()) == 16
        expected = np.concatenate(
            [hermitian_eigenvalues(p.X)]
            + [hermitian_eigenvalues(b) for b in p.M + p.N if b.size]
        )
        np.testing.assert_allclose(spectrum.sorted_values(), np.sort(expected), atol=1e-12)
        dense = hermitian_eigenvalues(partial_transpose(worked_example_rho, 4, 4))
        np.testing.assert_allclose(spectrum.sorted_values(), dense, atol=1e-9)

    def test_null_x_is_ppt(self):
        p = family_with_x(np.zeros((3, 3)), dB=4)
        spectrum = pt_block_spectrum(p)
        assert spectrum.x_eigs.tolist() == [0.0, 0.0, 0.0]
        assert negativity(spectrum).is_ppt

    def test_qubit_qudit_slots(self):
        q = sample_qubit_qudit(4, seed=5)
        spectrum = pt_block_spectrum(q)
        np.testing.assert_allclose(spectrum.n_eigs[0], hermitian_eigenvalues(q.A))
        np.testing.assert_allclose(spectrum.m_eigs[1], hermitian_eigenvalues(q.B))
        assert verify_direct_sum(q).verified

    @pytest.mark.parametrize("seed", range(20))
    def test_direct_sum_matches_dense(self, seed):
        dA, dB = SAMPLE_PAIRS[seed % len(SAMPLE_PAIRS)]
        check = verify_direct_sum(sample_random(dA, dB, seed=seed))
        assert check.verified
        assert check.max_deviation <= 1e-9

    @pytest.mark.slow
    def test_direct_sum_many_samples(self):
        for p in seeded_samples(500):
            check = verify_direct_sum(p)
            assert check.verified, (p.dims, check.max_deviation)
            spectrum = pt_block_spectrum(p)
            for values in spectrum.m_eigs + spectrum.n_eigs:
                assert np.all(values >= -1e-10)
            dense_negative = negativity(
                hermitian_eigenvalues(partial_transpose(assemble(p), p.dA, p.dB))
            )
            block_negative = negativity(spectrum)
            np.testing.assert_allclose(
                dense_negative.negative_eigenvalues,
                block_negative.negative_eigenvalues,
                atol=1e-9,
            )

    def test_werner_boundary_direct_sum(self):
        p = embed_werner(3, -1 / 8)
        assert verify_direct_sum(p).verified
        dense = hermitian_eigenvalues(partial_transpose(assemble(p), 3, 3))
        assert dense[0] == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("eps", [-0.4, -0.1, 0.0, 0.2])
    def test_werner_minimum_in_x(self, eps):
        spectrum = pt_block_spectrum(embed_werner(3, eps))
        minimum = (1 - eps) / 9 + eps
        assert np.min(np.abs(spectrum.x_eigs - minimum)) <= 1e-12
        assert spectrum.sorted_values()[0] == pytest.approx(min(minimum, (1 - eps) / 9))


class TestNegativity:
    def test_all_nonnegative(self):
        result = negativity([0.0, 0.2, 0.8])
        assert (result.negativity, result.negative_eigenvalues, result.is_ppt) == (0.0, [], True)

    def test_only_x_counts_for_block_spectrum(self):
        spectrum = BlockSpectrum(np.array([-0.1, 0.5]), [np.array([-0.3])], [])
        assert negativity(spectrum).negativity == pytest.approx(0.1)

    def test_tolerance(self):
        assert negativity([-1e-12, 1.0]).is_ppt
        assert not negativity([-1e-8, 1.0]).is_ppt

    def test_two_qubit_example(self):
        result = negativity(pt_block_spectrum(two_qubit(1 / 8, 1 / 8, 1 / 4)))
        assert result.negativity == pytest.approx(1 / 8, abs=1e-12)

    def test_singlet(self):
        eigenvalues = hermitian_eigenvalues(partial_transpose(werner(WernerSpec(2, -1)), 2, 2))
        assert negativity(eigenvalues).negativity == pytest.approx(0.5, abs=1e-10)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_trace_norm_convention(self, seed):
        p = sample_random(2, 3, seed=seed)
        eigenvalues = hermitian_eigenvalues(partial_transpose(assemble(p), 2, 3))
        expected = (np.sum(np.abs(eigenvalues)) - 1) / 2
        assert negativity(eigenvalues).negativity == pytest.approx(expected, abs=1e-10)


class TestTwoQubitNegativity:
    def test_uncoupled(self):
        assert two_qubit_negativity(0.2, 0.3, 0) == 0.0

    def test_example(self):
        assert two_qubit_negativity(1 / 8, 1 / 8, 1 / 4) == pytest.approx(1 / 8, abs=1e-15)

    def test_ppt_boundary(self):
        assert two_qubit_negativity(0.04, 0.09, 0.06j) == pytest.approx(0.0, abs=1e-15)

    def test_negative_population_rejected(self):
        with pytest.raises(ValueError):
            two_qubit_negativity(-0.1, 0.2, 0.1)

    @pytest.mark.slow
    def test_matches_dense_oracle(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            x00, x11 = rng.uniform(0.0, 0.2, size=2)
            x01 = complex(*rng.uniform(-0.15, 0.15, size=2))
            p = two_qubit(x00, x11, x01, a=0.3, b=0.3)
            eigenvalues = hermitian_eigenvalues(partial_transpose(assemble(p), 2, 2))
            closed = two_qubit_negativity(x00, x11, x01)
            assert closed == pytest.approx(negativity(eigenvalues).negativity, abs=1e-10)
            gap = x00 * x11 - abs(x01) ** 2
            if abs(gap) > 1e-8:
                verdict = classify(p).verdict
                assert (verdict == Verdict.NPT_ENTANGLED) == (gap < 0)


class TestSimplySeparable:
    def test_product_with_diagonal_alice(self):
        a = np.diag([0.3, 0.7])
        b = np.array([[0.5, 0.1j, 0], [-0.1j, 0.3, 0], [0, 0, 0.2]])
        assert is_simply_separable(np.kron(a, b), 2, 3)

    def test_coupled_two_qubit(self):
        assert not is_simply_separable(assemble(two_qubit(1 / 8, 1 / 8, 1 / 4)), 2, 2)

    def test_unbiased_sample(self):
        p = sample_random(3, 4, seed=9, entanglement_bias=0.0)
        assert is_simply_separable(assemble(p), 3, 4)

    def test_decompose_maximally_mixed(self):
        decomposition = decompose_simply_separable(np.eye(6) / 6, 2, 3)
        assert len(decomposition.terms) == 2
        for term in decomposition.terms:
            assert term.weight == pytest.approx(0.5)
            np.testing.assert_allclose(term.bob, np.eye(3) / 3, atol=1e-15)

    def test_decompose_drops_empty_blocks(self):
        rho = np.diag([0.5, 0.0, 0.0, 0.5])
        decomposition = decompose_simply_separable(rho, 2, 2)
        assert [term.weight for term in decomposition.terms] == [0.5, 0.5]
        rho = np.diag([0.0, 0.0, 0.4, 0.6])
        assert len(decompose_simply_separable(rho, 2, 2).terms) == 1

    def test_decompose_rejects_coupled(self):
        with pytest.raises(NotSimplySeparableError):
            decompose_simply_separable(assemble(two_qubit(1 / 8, 1 / 8, 1 / 4)), 2, 2)

    def test_random_decompositions_reconstruct(self):
        rng = np.random.default_rng(77)
        for _ in range(200):
            dA, dB = SAMPLE_PAIRS[int(rng.integers(len(SAMPLE_PAIRS)))]
            rho = block_diagonal_state(rng, dA, dB)
            decomposition = decompose_simply_separable(rho, dA, dB)
            np.testing.assert_allclose(decomposition.reconstruct(), rho, atol=1e-12)
            weights = [term.weight for term in decomposition.terms]
            assert sum(weights) == pytest.approx(1.0, abs=1e-12)
            for term in decomposition.terms:
                assert term.weight >= 0
                for factor in (term.alice, term.bob):
                    assert np.trace(factor).real == pytest.approx(1.0, abs=1e-12)
                    assert is_psd(factor).is_psd


class TestXPattern:
    def test_null(self):
        assert x_pattern(np.zeros((3, 3))) == XPattern.NULL

    def test_diagonal(self):
        assert x_pattern(np.diag([0.1, 0.2, 0.0])) == XPattern.DIAGONAL

    def test_antidiagonal_pairs(self):
        X = np.zeros((4, 4), dtype=complex)
        X[0, 1] = X[1, 0] = 0.2
        X[2, 3], X[3, 2] = 0.1j, -0.1j
        assert x_pattern(X) == XPattern.ANTIDIAG_2x2

    def test_lower_pairs(self):
        assert x_pattern([[0, 0.1], [0.1, 0.3]]) == XPattern.LOWER_2x2

    def test_general(self):
        assert x_pattern([[0.2, 0.1], [0.1, 0.3]]) == XPattern.GENERAL
        X = np.zeros((4, 4))
        X[0, 2] = X[2, 0] = 0.1
        assert x_pattern(X) == XPattern.GENERAL


class TestClassify:
    def test_two_qubit_ppt_is_separable(self):
        result = classify(two_qubit(0.1, 0.2, 0.1))
        assert result.verdict == Verdict.PPT_SEPARABLE
        assert result.reason == Reason.PRODUCT_SUBSPACE_DIM_LE_6
        assert result.is_ppt

    def test_two_qubit_npt(self):
        result = classify(two_qubit(1 / 8, 1 / 8, 1 / 4))
        assert result.verdict == Verdict.NPT_ENTANGLED
        assert result.negativity == pytest.approx(1 / 8)
        assert not result.is_ppt

    def test_antidiagonal_pairs_are_npt(self):
        X = np.zeros((4, 4), dtype=complex)
        X[0, 1] = X[1, 0] = 0.2
        X[2, 3], X[3, 2] = 0.1j, -0.1j
        result = classify(family_with_x(X))
        assert result.verdict == Verdict.NPT_ENTANGLED
        assert result.negativity == pytest.approx(0.3)

    def test_null_x(self):
        p = family_with_x(np.zeros((3, 3)), dB=4)
        result = classify(p)
        assert (result.verdict, result.reason) == (Verdict.PPT_SEPARABLE, Reason.X_NULL_FORCED)

    def test_lower_pairs_collapse_to_diagonal(self):
        p = family_with_x(np.diag([0.0, 0.3]))
        result = classify(p)
        assert (result.verdict, result.reason) == (Verdict.PPT_SEPARABLE, Reason.X_DIAGONAL)
        assert is_simply_separable(assemble(p), 2, 2)

    def test_diagonal_x(self):
        p = sample_random(3, 5, seed=4, entanglement_bias=0.0)
        assert classify(p).reason == Reason.SIMPLY_SEPARABLE

    def test_werner(self):
        result = classify(embed_werner(3, 0.2))
        assert (result.verdict, result.reason) == (Verdict.PPT_SEPARABLE, Reason.WERNER)
        assert classify(embed_werner(3, -0.3)).verdict == Verdict.NPT_ENTANGLED

    def test_qubit_qutrit_ppt(self):
        A = np.diag([0.2, 0.2])
        B = np.diag([0.2, 0.2])
        result = classify(QubitQuditParams(3, 0.1, 0.1, 0.05, A, B))
        assert result.reason == Reason.PRODUCT_SUBSPACE_DIM_LE_6

    def test_qubit_quatrit_isolated_corners(self):
        q = QubitQuditParams(4, 0.1, 0.1, 0.05, np.diag([0.1, 0.1, 0.2]), np.diag([0.2, 0.1, 0.1]))
        assert classify(q).reason == Reason.PRODUCT_SUBSPACE_DIM_LE_6

    def test_qubit_quatrit_coupled_is_undecided(self):
        A = np.array([[0.1, 0.02, 0.02], [0.02, 0.1, 0.02], [0.02, 0.02, 0.2]])
        q = QubitQuditParams(4, 0.1, 0.1, 0.05, A, np.diag([0.2, 0.1, 0.1]))
        assert validate(q).overall
        result = classify(q)
        assert (result.verdict, result.reason) == (Verdict.PPT_UNDECIDED, Reason.NONE)

    def test_x_support_on_small_product_subspace(self):
        X = np.zeros((4, 4))
        X[:2, :2] = [[0.1, 0.05], [0.05, 0.1]]
        weight = 0.8 / 12
        p = FamilyParams(
            4,
            4,
            X,
            [weight * np.eye(k) if k else [] for k in range(4)],
            [weight * np.eye(3 - k) if 3 - k else [] for k in range(4)],
        )
        assert validate(p).overall
        assert x_pattern(p.X) == XPattern.GENERAL
        result = classify(p)
        assert (result.verdict, result.reason) == (
            Verdict.PPT_SEPARABLE,
            Reason.PRODUCT_SUBSPACE_DIM_LE_6,
        )

    def test_coupled_zero_row_stays_undecided(self):
        X = np.zeros((4, 4))
        X[:2, :2] = [[0.1, 0.05], [0.05, 0.1]]
        weight = 0.8 / 12
        N0 = weight * np.eye(3)
        N0[0, 1] = N0[1, 0] = 0.01
        N0[1, 2] = N0[2, 1] = 0.01
        p = FamilyParams(
            4,
            4,
            X,
            [weight * np.eye(k) if k else [] for k in range(4)],
            [N0] + [weight * np.eye(3 - k) if 3 - k else [] for k in range(1, 4)],
        )
        result = classify(p)
        assert (result.verdict, result.reason) == (Verdict.PPT_UNDECIDED, Reason.NONE)

    def test_worked_example_is_undecided(self, worked_example_params):
        result = classify(worked_example_params)
        assert result.is_ppt
        assert result.verdict == Verdict.PPT_UNDECIDED

    def test_product_hull(self):
        pt = np.zeros((6, 6))
        pt[0, 5] = pt[5, 0] = 1.0
        assert product_hull(pt, 3, [0, 5]) == ([0, 1], [0, 2])

    def test_dense_singlet(self):
        result = classify_dense(werner(WernerSpec(2, -1)), 2, 2)
        assert result.verdict == Verdict.NPT_ENTANGLED
        assert result.negativity == pytest.approx(0.5)

    def test_dense_reasons(self):
        assert classify_dense(np.eye(9) / 9, 3, 3).reason == Reason.SIMPLY_SEPARABLE
        assert classify_dense(isotropic(IsotropicSpec(3, 0.2)), 3, 3).reason == Reason.WERNER
        q = QubitQuditParams(3, 0.1, 0.1, 0.05, np.diag([0.2, 0.2]), np.diag([0.2, 0.2]))
        assert classify_dense(assemble(q), 2, 3).reason == Reason.PRODUCT_SUBSPACE_DIM_LE_6
        assert classify_dense(isotropic(IsotropicSpec(3, 0.5)), 3, 3).verdict == Verdict.NPT_ENTANGLED

    @pytest.mark.slow
    def test_soundness_over_samples(self):
        samples = list(seeded_samples(300)) + list(seeded_samples(100, entanglement_bias=0.0))
        for p in samples:
            result = classify(p)
            if result.verdict == Verdict.NPT_ENTANGLED:
                assert result.negativity > 1e-10
            else:
                assert result.negativity == 0.0
            if result.verdict == Verdict.PPT_SEPARABLE:
                assert result.reason != Reason.NONE
            if result.reason in (Reason.X_NULL_FORCED, Reason.X_DIAGONAL):
                assert is_simply_separable(assemble(p), p.dA, p.dB)


class TestSubspacePartition:
    def test_ququart_groups(self):
        partition = subspace_partition(family_with_x(np.eye(4) / 10))
        assert partition.groups == [
            [0, 5, 10, 15],
            [1, 2, 3],
            [4],
            [6, 7],
            [8, 9],
            [11],
            [12, 13, 14],
        ]

    def test_two_qubit_groups(self):
        partition = subspace_partition(two_qubit(0.1, 0.1, 0))
        assert partition.groups == [[0, 3], [1], [2]]

    @pytest.mark.parametrize("dA,dB", SAMPLE_PAIRS)
    def test_partition_covers(self, dA, dB):
        flat = subspace_partition(sample_random(dA, dB, seed=0)).flat()
        assert sorted(flat) == list(range(dA * dB))


class TestReorder:
    def test_ququart_ordering(self, worked_example_params):
        perm = subspace_permutation(worked_example_params)
        assert perm.mapping == (0, 5, 10, 15, 1, 2, 3, 4, 6, 7, 8, 9, 11, 12, 13, 14)
        assert perm.block_sizes == (4, 3, 1, 2, 2, 1, 3)

    def test_two_qubit_ordering(self):
        assert subspace_permutation(two_qubit(0.1, 0.1, 0)).mapping == (0, 3, 1, 2)

    def test_qubit_qutrit_sizes(self):
        perm = subspace_permutation(sample_random(2, 3, seed=1))
        assert perm.block_sizes == (2, 2, 1, 1)

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            BasisPermutation((0, 0, 1))

    def test_identity_permutation(self, worked_example_rho):
        identity = BasisPermutation(tuple(range(16)))
        np.testing.assert_array_equal(apply_permutation(worked_example_rho, identity), worked_example_rho)

    def test_inverse(self, worked_example_params, worked_example_rho):
        perm = subspace_permutation(worked_example_params)
        back = apply_permutation(apply_permutation(worked_example_rho, perm), perm.inverse())
        np.testing.assert_array_equal(back, worked_example_rho)

    def test_worked_example_blocks(self, worked_example_params, worked_example_rho):
        p = worked_example_params
        perm = subspace_permutation(p)
        reordered = apply_permutation(partial_transpose(worked_example_rho, 4, 4), perm)
        assert verify_block_diagonal(reordered, perm.block_sizes) == (True, 0.0)
        blocks = diagonal_blocks(reordered, perm.block_sizes)
        expected = [p.X, p.N[0].T, p.M[1].T, p.N[1].T, p.M[2].T, p.N[2].T, p.M[3].T]
        for block, target in zip(blocks, expected):
            np.testing.assert_array_equal(block, target)

    def test_spectrum_preserved(self, worked_example_params, worked_example_rho):
        perm = subspace_permutation(worked_example_params)
        reordered = apply_permutation(worked_example_rho, perm)
        np.testing.assert_allclose(
            hermitian_eigenvalues(reordered), hermitian_eigenvalues(worked_example_rho), atol=1e-12
        )
        assert np.trace(reordered) == pytest.approx(np.trace(worked_example_rho), abs=1e-15)

    @pytest.mark.parametrize("seed", range(len(SAMPLE_PAIRS)))
    def test_samples_block_diagonal(self, seed):
        dA, dB = SAMPLE_PAIRS[seed]
        p = sample_random(dA, dB, seed=seed)
        perm = subspace_permutation(p)
        reordered = apply_permutation(partial_transpose(assemble(p), dA, dB), perm)
        check = verify_block_diagonal(reordered, perm.block_sizes)
        assert check.is_block_diagonal
        assert check.max_off_block == 0.0
        np.testing.assert_array_equal(diagonal_blocks(reordered, perm.block_sizes)[0], p.X)

    def test_dense_hermitian_not_block_diagonal(self):
        rng = np.random.default_rng(3)
        g = rng.normal(size=(5, 5))
        check = verify_block_diagonal(g + g.T, [2, 3])
        assert not check.is_block_diagonal
        assert check.max_off_block > 0

    def test_single_block(self):
        assert verify_block_diagonal(np.ones((3, 3)), [3]).is_block_diagonal

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            verify_block_diagonal(np.eye(3), [1, 1])


class TestQubitQuditSpectrum:
    @staticmethod
    def block(rng, dim):
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        gram = g.conj().T @ g
        mixed = 0.7 * np.eye(dim) / dim + 0.3 * gram / np.trace(gram).real
        return 0.45 * (mixed + mixed.conj().T) / 2

    def test_negative_eigenvalues_independent_of_dimension(self):
        rng = np.random.default_rng(12)
        reference = None
        for dB in range(2, 7):
            q = QubitQuditParams(dB, 0.05, 0.05, 0.06, self.block(rng, dB - 1), self.block(rng, dB - 1))
            assert validate(q).overall
            eigenvalues = hermitian_eigenvalues(partial_transpose(assemble(q), 2, dB))
            negatives = negativity(eigenvalues).negative_eigenvalues
            if reference is None:
                reference = negatives
            np.testing.assert_allclose(negatives, reference, atol=1e-10)
        np.testing.assert_allclose(reference, [-0.01], atol=1e-12)


class TestWernerThreshold:
    @pytest.mark.parametrize("d,threshold", [(2, -1 / 3), (3, -1 / 8), (4, -1 / 15)])
    def test_sign_change(self, d, threshold):
        lo, hi = werner_eps_range(d)
        grid = np.linspace(lo, hi, 200)
        minima = [pt_block_spectrum(embed_werner(d, eps)).x_eigs[0] for eps in grid]
        crossing = next(i for i, value in enumerate(minima) if value >= -1e-10)
        step = grid[1] - grid[0]
        assert abs(grid[crossing] - threshold) <= step
        assert all(value < 0 for value in minima[:crossing])
