"""Tests for the Gaussian information machinery."""

import math

import numpy as np
import pytest

from dirtypaper.gauss import (
    CovarianceMatrix,
    IllConditioned,
    RidgeApplied,
    SingularCovariance,
    differential_entropy,
    llse_error_covariance,
    mutual_information,
    schur_conditional_cov,
)
from dirtypaper.strategies import (
    ChannelParams,
    dpc_user,
    iid_gaussian_jammer,
    joint_covariance,
    random_feasible_jammer,
    random_feasible_user,
)

LN_2PIE = math.log(2.0 * math.pi * math.e)


def det_cofactor(m):
    """Independent determinant oracle by cofactor expansion."""
    m = np.asarray(m, dtype=float)
    k = m.shape[0]
    if k == 1:
        return m[0, 0]
    total = 0.0
    for col in range(k):
        minor = np.delete(np.delete(m, 0, axis=0), col, axis=1)
        total += (-1.0) ** col * m[0, col] * det_cofactor(minor)
    return total


def random_joint(seed, n):
    ch = ChannelParams(n=n)
    return ch, joint_covariance(
        ch, random_feasible_user(ch, seed), random_feasible_jammer(ch, seed + 1)
    )


class TestDifferentialEntropy:
    def test_standard_gaussian_nats(self):
        assert differential_entropy([[1.0]], "nats") == pytest.approx(
            0.5 * LN_2PIE, abs=1e-12
        )

    def test_additivity_for_independent_components(self):
        assert differential_entropy(np.eye(2), "nats") == pytest.approx(
            LN_2PIE, abs=1e-12
        )

    def test_correlated_pair_against_cofactor_oracle(self):
        cov = np.array([[2.0, 1.0], [1.0, 2.0]])
        expected = 0.5 * math.log((2 * math.pi * math.e) ** 2 * det_cofactor(cov))
        assert expected == pytest.approx(3.3871832107434003, abs=1e-12)
        assert differential_entropy(cov, "nats") == pytest.approx(expected, abs=1e-12)

    def test_bits_is_nats_over_ln2(self):
        cov = np.array([[2.0, 1.0], [1.0, 2.0]])
        assert differential_entropy(cov, "bits") == pytest.approx(
            differential_entropy(cov, "nats") / math.log(2.0), abs=1e-12
        )

    def test_singular_raises(self):
        with pytest.raises(SingularCovariance):
            differential_entropy(np.zeros((2, 2)))

    def test_singular_tagged_negative_infinity(self):
        assert differential_entropy(np.zeros((2, 2)), allow_singular=True) == -math.inf

    def test_tiny_determinant_counts_as_singular(self):
        with pytest.raises(SingularCovariance):
            differential_entropy([[1e-310]])

    def test_asymmetric_input_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            differential_entropy([[1.0, 0.5], [0.2, 1.0]])

    def test_indefinite_input_rejected_not_repaired(self):
        with pytest.raises(ValueError, match="semidefinite"):
            differential_entropy([[1.0, 2.0], [2.0, 1.0]])


class TestSchurConditionalCov:
    def test_conditioning_on_nothing(self):
        _, joint = random_joint(3, 2)
        np.testing.assert_allclose(
            schur_conditional_cov(joint, "X", ()).values, joint.cov("X")
        )

    def test_scalar_llse_residual(self):
        ch = ChannelParams(p_u=1.0, p_j=0.0, sigma2=1.0, sigma_s2=0.0)
        joint = joint_covariance(ch, dpc_user(ch), iid_gaussian_jammer(ch))
        cond = schur_conditional_cov(joint, "X", "Y")
        assert cond.values[0, 0] == pytest.approx(0.5, abs=1e-12)

    def test_matches_llse_error_covariance(self):
        ch = ChannelParams()
        joint = joint_covariance(ch, dpc_user(ch), iid_gaussian_jammer(ch))
        via_schur = schur_conditional_cov(joint, "X", ("Y", "S")).values
        via_llse = llse_error_covariance(
            joint.cov("X"), joint.cross("X", ("Y", "S")), joint.cov(("Y", "S"))
        ).error_cov.values
        np.testing.assert_allclose(via_schur, via_llse, atol=1e-12)

    def test_degenerate_state_is_projected_out(self):
        ch = ChannelParams(sigma_s2=0.0)
        joint = joint_covariance(ch, dpc_user(ch), iid_gaussian_jammer(ch))
        with_s = schur_conditional_cov(joint, "X", ("Y", "S")).values
        without_s = schur_conditional_cov(joint, "X", "Y").values
        np.testing.assert_allclose(with_s, without_s, atol=1e-12)

    def test_target_and_given_must_be_disjoint(self):
        _, joint = random_joint(5, 1)
        with pytest.raises(ValueError, match="disjoint"):
            schur_conditional_cov(joint, "X", ("X", "Y"))


class TestLlseErrorCovariance:
    def test_useless_observations(self):
        tt = np.array([[2.0, 0.3], [0.3, 1.0]])
        result = llse_error_covariance(tt, np.zeros((2, 2)), np.eye(2))
        np.testing.assert_allclose(result.error_cov.values, tt)
        np.testing.assert_allclose(result.gain, np.zeros((2, 2)))

    def test_scalar_wiener_formula(self):
        p, s2 = 3.0, 2.0
        result = llse_error_covariance([[p]], [[p]], [[p + s2]])
        assert result.error_cov.values[0, 0] == pytest.approx(
            p * s2 / (p + s2), abs=1e-12
        )
        assert result.gain[0, 0] == pytest.approx(p / (p + s2), abs=1e-12)

    def test_gain_achieves_the_error(self):
        # error of the estimate gain @ obs equals the reported covariance
        _, joint = random_joint(11, 2)
        tt = joint.cov("X")
        tg = joint.cross("X", ("Y", "S"))
        gg = joint.cov(("Y", "S"))
        result = llse_error_covariance(tt, tg, gg)
        direct = tt - result.gain @ gg @ result.gain.T
        residual_cross = tg - result.gain @ gg
        np.testing.assert_allclose(residual_cross, 0.0, atol=1e-10)
        np.testing.assert_allclose(result.error_cov.values, direct, atol=1e-10)

    def test_block_case_agrees_with_schur(self):
        for seed in range(20):
            n = 1 + seed % 4
            _, joint = random_joint(100 + seed, n)
            via_llse = llse_error_covariance(
                joint.cov("X"), joint.cross("X", ("Y", "S")), joint.cov(("Y", "S"))
            ).error_cov.values
            via_schur = schur_conditional_cov(joint, "X", ("Y", "S")).values
            np.testing.assert_allclose(via_llse, via_schur, atol=1e-10)

    def test_ill_conditioned_raises_without_ridge(self):
        gg = np.diag([1.0, 1e-13])
        with pytest.raises(IllConditioned):
            llse_error_covariance(np.eye(1), np.array([[0.5, 1e-7]]), gg)

    def test_ridge_reported(self):
        gg = np.diag([1.0, 1e-13])
        with pytest.warns(RidgeApplied):
            result = llse_error_covariance(
                np.eye(1), np.array([[0.5, 1e-7]]), gg, ridge=True
            )
        assert np.isfinite(result.error_cov.values).all()

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError, match="conform"):
            llse_error_covariance(np.eye(2), np.ones((1, 2)), np.eye(2))


class TestMutualInformation:
    def test_independent_components_zero(self):
        ch = ChannelParams(sigma_s2=2.0)
        joint = joint_covariance(ch, dpc_user(ch), iid_gaussian_jammer(ch))
        # the canonical input is uncoupled from the state
        assert mutual_information(joint, "X", "S") == pytest.approx(0.0, abs=1e-12)

    def test_scalar_snr_one_half_bit(self):
        ch = ChannelParams(p_u=1.0, p_j=0.0, sigma2=1.0, sigma_s2=0.0)
        joint = joint_covariance(ch, dpc_user(ch), iid_gaussian_jammer(ch))
        assert mutual_information(joint, "X", "Y", (), "bits") == pytest.approx(
            0.5, abs=1e-12
        )

    def test_decoder_informed_equilibrium_value(self):
        ch = ChannelParams()
        joint = joint_covariance(ch, dpc_user(ch), iid_gaussian_jammer(ch))
        assert mutual_information(joint, "X", "Y", "S") == pytest.approx(
            0.2924812503605781, abs=1e-12
        )

    def test_symmetry(self):
        for seed in range(25):
            _, joint = random_joint(200 + seed, 1 + seed % 3)
            ab = mutual_information(joint, "X", "Y", "S")
            ba = mutual_information(joint, "Y", "X", "S")
            assert ab == pytest.approx(ba, abs=1e-9)

    def test_chain_rule(self):
        for seed in range(25):
            _, joint = random_joint(300 + seed, 1 + seed % 3)
            joint_two = mutual_information(joint, "X", ("Y", "S"))
            split = mutual_information(joint, "X", "S") + mutual_information(
                joint, "X", "Y", "S"
            )
            assert joint_two == pytest.approx(split, abs=1e-9)

    def test_conditioning_reduces_entropy(self):
        for seed in range(25):
            _, joint = random_joint(400 + seed, 1 + seed % 3)
            less = differential_entropy(
                schur_conditional_cov(joint, "X", ("Y", "S")), "nats"
            )
            more = differential_entropy(schur_conditional_cov(joint, "X", "Y"), "nats")
            assert less <= more + 1e-9

    def test_nonnegative(self):
        for seed in range(25):
            _, joint = random_joint(500 + seed, 1 + seed % 4)
            assert mutual_information(joint, "U", "Y") >= -1e-9

    def test_overlapping_groups_rejected(self):
        _, joint = random_joint(7, 1)
        with pytest.raises(ValueError, match="disjoint"):
            mutual_information(joint, "X", "X")


class TestAgreementSweep:
    def test_llse_matches_schur_on_random_joints(self):
        # two independent code paths must agree across dimensions 1..8
        count = 0
        for seed in range(100):
            n = 1 + seed % 8
            _, joint = random_joint(1000 + seed, n)
            a = llse_error_covariance(
                joint.cov("X"), joint.cross("X", ("Y", "S")), joint.cov(("Y", "S"))
            ).error_cov.values
            b = schur_conditional_cov(joint, "X", ("Y", "S")).values
            np.testing.assert_allclose(a, b, atol=1e-10)
            min_eig = np.linalg.eigvalsh(b)[0]
            assert min_eig >= -1e-10 * max(np.trace(b), 0.0)
            count += 1
        assert count == 100


class TestCovarianceMatrix:
    def test_wraps_and_validates(self):
        cm = CovarianceMatrix(np.array([[2.0, 1.0], [1.0, 2.0]]))
        assert cm.dim == 2
        assert np.asarray(cm).shape == (2, 2)

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError):
            CovarianceMatrix(np.array([[1.0, 3.0], [3.0, 1.0]]))
