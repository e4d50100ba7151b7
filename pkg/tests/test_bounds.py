import math

import numpy as np
import pytest

from manifold_fs import (
    InvalidInput,
    NotSharedEigenvector,
    difference_operator,
    predicted_shared_eigenvalue,
    prop1_bound,
    prop2_bound,
)

from conftest import random_orthogonal


def commuting_kernel_pair(rng, d, unit_diag=False):
    """Kernel-like commuting pair: common eigenbasis, spectra in (0, 1]."""
    q = random_orthogonal(rng, d)
    w1 = rng.uniform(0.05, 1.0, size=d)
    w2 = rng.uniform(0.05, 1.0, size=d)
    k1 = (q * w1) @ q.T
    k2 = (q * w2) @ q.T
    return k1, k2, q, w1, w2


class TestPredictedSharedEigenvalue:
    def test_equal_inputs_zero(self):
        assert predicted_shared_eigenvalue(0.7, 0.7) == 0.0

    def test_four_one(self):
        assert abs(predicted_shared_eigenvalue(4.0, 1.0) - 2 * math.log(2)) < 1e-12

    def test_antisymmetry(self):
        assert predicted_shared_eigenvalue(1.0, 4.0) == -predicted_shared_eigenvalue(
            4.0, 1.0
        )

    def test_nonpositive_rejected(self):
        with pytest.raises(InvalidInput):
            predicted_shared_eigenvalue(0.0, 1.0)

    def test_matches_difference_operator_on_commuting(self, rng):
        k1, k2, q, w1, w2 = commuting_kernel_pair(rng, 6)
        d = difference_operator(k1, k2)
        for i in range(6):
            v = q[:, i]
            lam = float(v @ d @ v)
            assert abs(lam - predicted_shared_eigenvalue(w1[i], w2[i])) < 1e-8


class TestProp1Bound:
    def test_equal_kernels(self, rng):
        k1, _, q, _, _ = commuting_kernel_pair(rng, 5)
        report = prop1_bound(k1, k1.copy(), q[:, 0])
        assert report.lambda_d_abs < 1e-12
        assert report.satisfied

    def test_hundred_commuting_trials(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            d = int(rng.integers(3, 9))
            k1, k2, q, w1, w2 = commuting_kernel_pair(rng, d)
            i = int(rng.integers(d))
            report = prop1_bound(k1, k2, q[:, i])
            # oracle: evaluate both sides directly
            lhs = abs(predicted_shared_eigenvalue(w1[i], w2[i]))
            phi = np.abs(q[:, i])
            rhs = 2.0 * float(phi @ np.abs(k1 - k2) @ phi)
            assert abs(report.lambda_d_abs - lhs) < 1e-9 * max(1.0, lhs)
            assert abs(report.rhs - rhs) < 1e-9 * max(1.0, rhs)
            assert report.satisfied

    def test_rhs_symmetric_in_kernels(self, rng):
        k1, k2, q, _, _ = commuting_kernel_pair(rng, 6)
        r12 = prop1_bound(k1, k2, q[:, 2])
        r21 = prop1_bound(k2, k1, q[:, 2])
        assert abs(r12.rhs - r21.rhs) < 1e-12

    def test_rejects_unshared_vector(self, rng):
        k1, k2, _, _, _ = commuting_kernel_pair(rng, 6)
        v = rng.normal(size=6)
        v /= np.linalg.norm(v)
        with pytest.raises(NotSharedEigenvector):
            prop1_bound(k1, k2, v)

    def test_rejects_non_unit_vector(self, rng):
        k1, k2, q, _, _ = commuting_kernel_pair(rng, 4)
        with pytest.raises(InvalidInput):
            prop1_bound(k1, k2, 2.0 * q[:, 0])


class TestProp2Bound:
    def test_zero_perturbation_reduces_to_prop1(self, rng):
        k1, k2, q, _, _ = commuting_kernel_pair(rng, 5)
        phi = q[:, 1]
        r1 = prop1_bound(k1, k2, phi)
        r2 = prop2_bound(k1, k2, phi, phi.copy(), eps=0.0)
        assert abs(r2.rhs - r1.rhs) < 1e-12
        assert abs(r2.lambda_d_abs - r1.lambda_d_abs) < 1e-12

    def test_perturbed_trials(self):
        rng = np.random.default_rng(23)
        eps = 1e-3
        for _ in range(50):
            d = int(rng.integers(3, 9))
            k1, k2, q, w1, w2 = commuting_kernel_pair(rng, d)
            i = int(rng.integers(d))
            phi1 = q[:, i]
            bump = rng.normal(size=d)
            bump -= (bump @ phi1) * phi1
            bump *= 0.5 * eps / max(np.linalg.norm(bump), 1e-300)
            phi2 = phi1 + bump
            phi2 /= np.linalg.norm(phi2)
            report = prop2_bound(k1, k2, phi1, phi2, eps)
            assert report.satisfied

    def test_row_sum_term_and_crude_bound(self, rng):
        k1, k2, q, _, _ = commuting_kernel_pair(rng, 6)
        eps = 1e-2
        r = prop2_bound(k1, k2, q[:, 0], q[:, 0].copy(), eps)
        base = prop1_bound(k1, k2, q[:, 0])
        row_sums = k2.sum(axis=1)
        assert abs(r.rhs - base.rhs - 2 * float(row_sums.max()) * eps * eps) < 1e-12

    def test_row_sum_constant_below_dimension_for_kernels(self, rng):
        # unit-diagonal kernels with entries in (0, 1] keep the row-sum
        # constant at or below the dimension
        from manifold_fs import build_rbf_kernel

        k = build_rbf_kernel(rng.normal(size=(8, 6)), scale=1.0).matrix
        assert float(k.sum(axis=1).max()) <= 6.0

    def test_gap_exceeding_eps_rejected(self, rng):
        k1, k2, q, _, _ = commuting_kernel_pair(rng, 5)
        other = q[:, 1]
        with pytest.raises(InvalidInput):
            prop2_bound(k1, k2, q[:, 0], other, eps=1e-6)
