import numpy as np
import numpy.testing as npt
import pytest

import infotherm as it
from infotherm.errors import (
    BlockFormViolation,
    DimensionMismatch,
    NotProjective,
    ValidationError,
)
from infotherm.measurement import partial_trace_record, partial_trace_system

from conftest import (
    DS_COMPUTATIONAL,
    DS_HELSTROM,
    INFO_COMPUTATIONAL,
    INFO_HELSTROM,
    P_HELSTROM_CORRECT,
)


def trine_povm():
    """Three symmetric rank-deficient elements (2/3)|t_k><t_k| on a qubit."""
    elements = []
    for k in range(3):
        v = np.array([1.0, np.exp(2j * np.pi * k / 3)]) / np.sqrt(2)
        elements.append((2.0 / 3.0) * np.outer(v, v.conj()))
    return it.Povm(tuple(elements))


def haar_basis(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    w = g @ g.conj().T
    return it.DensityMatrix(w / np.trace(w).real)


class TestPovm:
    def test_projective_detected(self, computational_basis):
        assert computational_basis.projective

    def test_general_detected(self):
        assert not trine_povm().projective

    def test_declared_projective_must_be(self):
        with pytest.raises(ValidationError):
            it.Povm(trine_povm().elements, projective=True)

    def test_rejects_bad_sum(self):
        with pytest.raises(ValidationError):
            it.Povm((np.diag([1.0, 0.0]), np.diag([0.0, 0.9])))

    def test_rejects_non_psd_element(self):
        with pytest.raises(ValidationError):
            it.Povm((np.diag([1.5, 0.5]), np.diag([-0.5, 0.5])))

    def test_rejects_mixed_dims(self):
        with pytest.raises(DimensionMismatch):
            it.Povm((np.eye(2), np.zeros((3, 3))))

    def test_single_element_identity(self):
        v = it.Povm((np.eye(3),))
        assert v.projective and v.size == 1


class TestBasisMeasurement:
    def test_rejects_non_unitary(self):
        with pytest.raises(ValidationError):
            it.basis_measurement(np.ones((2, 2)))

    def test_blocks_coarse_grain(self):
        v = it.basis_measurement(np.eye(4), blocks=[[0, 1], [2, 3]])
        assert v.size == 2 and v.projective
        npt.assert_allclose(v.elements[0], np.diag([1.0, 1.0, 0.0, 0.0]), atol=1e-12)


class TestJointDistribution:
    def test_orthogonal_diagonal(self, orthogonal_ensemble, computational_basis):
        jd = it.joint_distribution(orthogonal_ensemble, computational_basis)
        npt.assert_allclose(jd.matrix, np.diag([0.5, 0.5]), atol=1e-12)

    def test_two_state_computational(self, two_state_ensemble, computational_basis):
        jd = it.joint_distribution(two_state_ensemble, computational_basis)
        npt.assert_allclose(jd.matrix, [[0.5, 0.0], [0.25, 0.25]], atol=1e-12)

    def test_helstrom_correct_probability(self, two_state_ensemble, helstrom_basis):
        jd = it.joint_distribution(two_state_ensemble, helstrom_basis)
        npt.assert_allclose(jd.matrix[0, 0] / 0.5, P_HELSTROM_CORRECT, atol=1e-9)
        npt.assert_allclose(jd.matrix[1, 0] / 0.5, 1 - P_HELSTROM_CORRECT, atol=1e-9)

    @pytest.mark.parametrize("seed", range(10))
    def test_marginals(self, seed):
        e, v = it.random_instance(3, 3, 4, "mixed", seed)
        jd = it.joint_distribution(e, v)
        npt.assert_allclose(jd.priors, e.probs, atol=1e-9)
        npt.assert_allclose(jd.matrix.sum(), 1.0, atol=1e-9)
        npt.assert_allclose(
            jd.outcome_probs, it.outcome_distribution(it.average_state(e), v), atol=1e-9
        )

    def test_dim_mismatch(self, two_state_ensemble):
        with pytest.raises(DimensionMismatch):
            it.joint_distribution(two_state_ensemble, it.Povm((np.eye(3),)))

    def test_rejects_bad_table(self):
        with pytest.raises(ValidationError):
            it.JointDistribution(np.array([[0.7, 0.7]]))


class TestMutualInformation:
    def test_independent_table_zero(self):
        jd = it.JointDistribution(np.outer([0.3, 0.7], [0.4, 0.6]))
        assert it.mutual_information(jd) <= 1e-12

    def test_perfectly_correlated(self, orthogonal_ensemble, computational_basis):
        jd = it.joint_distribution(orthogonal_ensemble, computational_basis)
        npt.assert_allclose(it.mutual_information(jd), 1.0, atol=1e-12)

    def test_two_state_computational(self, two_state_ensemble, computational_basis):
        jd = it.joint_distribution(two_state_ensemble, computational_basis)
        npt.assert_allclose(it.mutual_information(jd), INFO_COMPUTATIONAL, atol=1e-9)

    def test_two_state_helstrom(self, two_state_ensemble, helstrom_basis):
        jd = it.joint_distribution(two_state_ensemble, helstrom_basis)
        npt.assert_allclose(it.mutual_information(jd), INFO_HELSTROM, atol=1e-9)

    @pytest.mark.parametrize("seed", range(10))
    def test_bounded_by_marginal_entropies(self, seed):
        e, v = it.random_instance(2, 4, 3, "pure", seed + 50)
        jd = it.joint_distribution(e, v)
        info = it.mutual_information(jd)
        assert info >= 0.0
        assert info <= it.shannon_entropy(jd.priors) + 1e-9
        outcome = np.clip(jd.outcome_probs, 0, None)
        assert info <= it.shannon_entropy(outcome / outcome.sum()) + 1e-9


class TestPostMeasurementState:
    def test_diagonal_fixed_point(self, computational_basis):
        r = it.DensityMatrix(np.diag([0.75, 0.25]))
        npt.assert_allclose(
            it.post_measurement_state(r, computational_basis).matrix,
            r.matrix,
            atol=1e-12,
        )

    def test_dephases_off_diagonals(self, two_state_ensemble, computational_basis):
        rho = it.average_state(two_state_ensemble)
        sigma = it.post_measurement_state(rho, computational_basis)
        npt.assert_allclose(sigma.matrix, np.diag([0.75, 0.25]), atol=1e-12)

    def test_projective_idempotent(self, helstrom_basis):
        rho = random_density(2, np.random.default_rng(4))
        once = it.post_measurement_state(rho, helstrom_basis)
        twice = it.post_measurement_state(once, helstrom_basis)
        npt.assert_allclose(twice.matrix, once.matrix, atol=1e-12)

    def test_general_povm_records_outcome(self, two_state_ensemble):
        rho = it.average_state(two_state_ensemble)
        coin = it.Povm((np.eye(2) / 2, np.eye(2) / 2))
        sigma = it.post_measurement_state(rho, coin)
        assert sigma.dim == 4
        # each record block holds sqrt(E) rho sqrt(E) = rho/2
        blocks = sigma.matrix.reshape(2, 2, 2, 2)
        npt.assert_allclose(blocks[:, 0, :, 0], rho.matrix / 2, atol=1e-12)
        npt.assert_allclose(blocks[:, 1, :, 1], rho.matrix / 2, atol=1e-12)
        npt.assert_allclose(blocks[:, 0, :, 1], 0, atol=1e-12)

    def test_record_marginal_is_outcome_distribution(self):
        rng = np.random.default_rng(9)
        rho = random_density(2, rng)
        v = trine_povm()
        sigma = it.post_measurement_state(rho, v)
        record = partial_trace_system(sigma.matrix, 2, 3)
        npt.assert_allclose(
            np.diag(record).real, it.outcome_distribution(rho, v), atol=1e-9
        )


class TestDeltaS:
    def test_diagonal_state_zero(self, computational_basis):
        r = it.DensityMatrix(np.diag([0.75, 0.25]))
        assert it.delta_s(r, computational_basis) <= 1e-12

    def test_two_state_computational(self, two_state_ensemble, computational_basis):
        rho = it.average_state(two_state_ensemble)
        npt.assert_allclose(
            it.delta_s(rho, computational_basis), DS_COMPUTATIONAL, atol=1e-9
        )

    def test_two_state_helstrom(self, two_state_ensemble, helstrom_basis):
        rho = it.average_state(two_state_ensemble)
        npt.assert_allclose(it.delta_s(rho, helstrom_basis), DS_HELSTROM, atol=1e-9)

    def test_eigenbasis_measurement_zero(self):
        rng = np.random.default_rng(12)
        rho = random_density(3, rng)
        basis = np.linalg.eigh(rho.matrix)[1]
        assert it.delta_s(rho, it.basis_measurement(basis)) <= 1e-9

    @pytest.mark.parametrize("seed", range(25))
    def test_nonnegative_for_random_pairs(self, seed):
        rng = np.random.default_rng(seed)
        dim = int(rng.integers(2, 5))
        rho = random_density(dim, rng)
        if seed % 2:
            v = it.basis_measurement(haar_basis(dim, rng))
        else:
            _, v = it.random_instance(dim, 2, int(rng.integers(2, 6)), "mixed", seed)
        assert it.delta_s(rho, v) >= 0.0


class TestNaimarkDilation:
    def test_isometry(self):
        iso, proj = it.naimark_dilation(trine_povm())
        assert iso.shape == (6, 2)
        npt.assert_allclose(iso.conj().T @ iso, np.eye(2), atol=1e-12)
        assert proj.projective and proj.size == 3

    @pytest.mark.parametrize("seed", range(10))
    def test_statistics_preserved(self, seed):
        rng = np.random.default_rng(seed)
        dim = int(rng.integers(2, 4))
        _, v = it.random_instance(dim, 2, int(rng.integers(2, 6)), "pure", seed + 7)
        rho = random_density(dim, rng)
        iso, proj = it.naimark_dilation(v)
        dilated = it.DensityMatrix(iso @ rho.matrix @ iso.conj().T)
        npt.assert_allclose(
            it.outcome_distribution(dilated, proj),
            it.outcome_distribution(rho, v),
            atol=1e-9,
        )

    def test_projective_input_round_trips(self, helstrom_basis):
        rho = random_density(2, np.random.default_rng(3))
        iso, proj = it.naimark_dilation(helstrom_basis)
        dilated = it.DensityMatrix(iso @ rho.matrix @ iso.conj().T)
        npt.assert_allclose(
            it.outcome_distribution(dilated, proj),
            it.outcome_distribution(rho, helstrom_basis),
            atol=1e-12,
        )

    def test_coin_povm(self):
        rho = random_density(2, np.random.default_rng(8))
        coin = it.Povm((np.eye(2) / 2, np.eye(2) / 2))
        iso, proj = it.naimark_dilation(coin)
        dilated = it.DensityMatrix(iso @ rho.matrix @ iso.conj().T)
        npt.assert_allclose(it.outcome_distribution(dilated, proj), [0.5, 0.5], atol=1e-12)


class TestDemonRecord:
    def test_two_state_blocks(self, two_state_ensemble, computational_basis):
        rho = it.average_state(two_state_ensemble)
        rec = it.demon_record_state(rho, computational_basis)
        npt.assert_allclose(rec.matrix, np.diag([0.75, 0.0, 0.0, 0.25]), atol=1e-12)

    def test_record_marginal_matches_sigma(self):
        rng = np.random.default_rng(21)
        rho = random_density(3, rng)
        v = it.basis_measurement(haar_basis(3, rng))
        rec = it.demon_record_state(rho, v)
        sigma = it.post_measurement_state(rho, v)
        npt.assert_allclose(partial_trace_record(rec.matrix, 3, 3), sigma.matrix, atol=1e-9)

    def test_entropy_equals_sigma_entropy(self):
        rng = np.random.default_rng(22)
        rho = random_density(2, rng)
        v = it.basis_measurement(haar_basis(2, rng))
        rec = it.demon_record_state(rho, v)
        sigma = it.post_measurement_state(rho, v)
        npt.assert_allclose(
            it.von_neumann_entropy(rec), it.von_neumann_entropy(sigma), atol=1e-9
        )

    def test_requires_projective(self):
        rho = it.maximally_mixed(2)
        with pytest.raises(NotProjective):
            it.demon_record_state(rho, trine_povm())


class TestDemonReset:
    @pytest.mark.parametrize("seed", range(10))
    def test_reset_round_trip(self, seed):
        rng = np.random.default_rng(seed)
        dim = int(rng.integers(2, 5))
        rho = random_density(dim, rng)
        v = it.basis_measurement(haar_basis(dim, rng))
        rec = it.demon_record_state(rho, v)
        unitary, after = it.demon_reset(rec, v)
        assert np.max(np.abs(unitary @ unitary.conj().T - np.eye(rec.dim))) <= 1e-9
        sigma = it.post_measurement_state(rho, v)
        ground = np.zeros((dim, dim))
        ground[0, 0] = 1.0
        expected = np.kron(sigma.matrix, ground)
        npt.assert_allclose(after.matrix, expected, atol=1e-9)
        # memory marginal is exactly blank again
        mem = partial_trace_system(after.matrix, dim, v.size)
        target = np.zeros((v.size, v.size))
        target[0, 0] = 1.0
        npt.assert_allclose(mem, target, atol=1e-9)
        # reversible: no entropy was produced
        npt.assert_allclose(
            it.von_neumann_entropy(after), it.von_neumann_entropy(rec), atol=1e-9
        )

    def test_single_outcome_trivial(self):
        rho = random_density(2, np.random.default_rng(30))
        v = it.Povm((np.eye(2),))
        rec = it.demon_record_state(rho, v)
        _, after = it.demon_reset(rec, v)
        npt.assert_allclose(after.matrix, rec.matrix, atol=1e-12)

    def test_rejects_uncorrelated_memory(self, computational_basis):
        bogus = it.maximally_mixed(4)
        with pytest.raises(BlockFormViolation):
            it.demon_reset(bogus, computational_basis)

    def test_rejects_wrong_dimension(self, computational_basis):
        with pytest.raises(DimensionMismatch):
            it.demon_reset(it.maximally_mixed(6), computational_basis)

    def test_requires_projective(self):
        with pytest.raises(NotProjective):
            it.demon_reset(it.maximally_mixed(6), trine_povm())
