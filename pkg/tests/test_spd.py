import math

import numpy as np
import pytest

from manifold_fs import (
    InvalidInput,
    NotPositiveDefinite,
    difference_operator,
    exp_map,
    geodesic,
    log_map,
    midpoint_mean,
    predicted_shared_eigenvalue,
)
from manifold_fs.linalg import sym_eig, symmetrize

from conftest import random_orthogonal, random_spd, rel_err


def commuting_pair(rng, d, lo=0.2, hi=5.0):
    """Two SPD matrices sharing a random eigenbasis."""
    q = random_orthogonal(rng, d)
    w1 = rng.uniform(lo, hi, size=d)
    w2 = rng.uniform(lo, hi, size=d)
    return (q * w1) @ q.T, (q * w2) @ q.T, q, w1, w2


class TestGeodesic:
    def test_endpoints(self, rng):
        for _ in range(20):
            k1 = random_spd(rng, 6, cond=100.0)
            k2 = random_spd(rng, 6, cond=100.0)
            assert rel_err(geodesic(k1, k2, 0.0), k1) < 1e-9
            assert rel_err(geodesic(k1, k2, 1.0), k2) < 1e-9

    def test_commuting_closed_form(self, rng):
        w1 = np.array([1.0, 4.0, 0.5])
        w2 = np.array([2.0, 1.0, 3.0])
        for t in (0.25, 0.5, 0.9):
            got = geodesic(np.diag(w1), np.diag(w2), t)
            expected = np.diag(w1 ** (1 - t) * w2**t)
            assert rel_err(got, expected) < 1e-12

    def test_constant_when_equal(self, rng):
        k = random_spd(rng, 5)
        for t in (0.0, 0.3, 1.0):
            assert rel_err(geodesic(k, k, t), k) < 1e-12

    def test_t_out_of_range(self, rng):
        k = random_spd(rng, 3)
        with pytest.raises(InvalidInput):
            geodesic(k, k, 1.5)

    def test_rank_deficient_rejected(self):
        singular = np.diag([1.0, 0.0, 2.0])
        with pytest.raises(NotPositiveDefinite):
            geodesic(singular, np.eye(3), 0.5)


class TestMidpointMean:
    def test_scalar_geometric_mean(self):
        # 1-d case embedded in a diagonal: midpoint of 4 and 1 is 2
        m = midpoint_mean(np.diag([4.0, 9.0]), np.diag([1.0, 9.0]))
        assert rel_err(m, np.diag([2.0, 9.0])) < 1e-12

    def test_equal_inputs(self, rng):
        k = random_spd(rng, 4)
        assert rel_err(midpoint_mean(k, k), k) < 1e-12

    def test_argument_symmetry(self, rng):
        for _ in range(20):
            k1 = random_spd(rng, 7, cond=1e3)
            k2 = random_spd(rng, 7, cond=1e3)
            m12 = midpoint_mean(k1, k2)
            m21 = midpoint_mean(k2, k1)
            assert rel_err(m12, m21) < 1e-8


class TestLogExpMaps:
    def test_log_at_self_is_zero(self, rng):
        k = random_spd(rng, 5)
        assert np.abs(log_map(k, k)).max() < 1e-10

    def test_scalar_value(self):
        # base 2, target 4: 2 log 2
        got = log_map(np.diag([2.0, 1.0]), np.diag([4.0, 1.0]))
        assert abs(got[0, 0] - 2.0 * math.log(2.0)) < 1e-12
        assert abs(got[1, 1]) < 1e-12

    def test_exp_scalar_value(self):
        tangent = np.diag([2.0 * math.log(2.0), 0.0])
        got = exp_map(np.diag([2.0, 1.0]), tangent)
        assert rel_err(got, np.diag([4.0, 1.0])) < 1e-12

    def test_exp_of_zero(self, rng):
        k = random_spd(rng, 6)
        assert rel_err(exp_map(k, np.zeros((6, 6))), k) < 1e-12

    def test_round_trip(self, rng):
        for _ in range(20):
            base = random_spd(rng, 8, cond=100.0)
            target = random_spd(rng, 8, cond=100.0)
            back = exp_map(base, log_map(base, target))
            assert rel_err(back, target) < 1e-8

    def test_exp_log_other_order(self, rng):
        base = random_spd(rng, 6, cond=10.0)
        tangent = symmetrize(rng.normal(size=(6, 6)))
        recovered = log_map(base, exp_map(base, tangent))
        assert rel_err(recovered, tangent) < 1e-8


class TestDifferenceOperator:
    def test_zero_for_equal(self, rng):
        k = random_spd(rng, 5)
        assert np.abs(difference_operator(k, k)).max() < 1e-10

    def test_scalar_case(self):
        d = difference_operator(np.diag([4.0, 9.0]), np.diag([1.0, 9.0]))
        assert abs(d[0, 0] - 2.0 * math.log(2.0)) < 1e-12
        assert abs(d[0, 0] - predicted_shared_eigenvalue(4.0, 1.0)) < 1e-12

    def test_commuting_closed_form(self, rng):
        w1 = np.array([1.0, 4.0, 0.5, 2.0])
        w2 = np.array([2.0, 1.0, 3.0, 2.0])
        d = difference_operator(np.diag(w1), np.diag(w2))
        expected = np.diag([predicted_shared_eigenvalue(a, b) for a, b in zip(w1, w2)])
        assert np.abs(d - expected).max() < 1e-10

    def test_antisymmetry(self, rng):
        for _ in range(20):
            k1 = random_spd(rng, 6, cond=1e3)
            k2 = random_spd(rng, 6, cond=1e3)
            d12 = difference_operator(k1, k2)
            d21 = difference_operator(k2, k1)
            assert rel_err(d21, -d12) < 1e-8

    def test_shared_eigenvector_law(self, rng):
        for _ in range(10):
            k1, k2, q, w1, w2 = commuting_pair(rng, 6)
            d = difference_operator(k1, k2)
            predicted = np.array(
                [predicted_shared_eigenvalue(a, b) for a, b in zip(w1, w2)]
            )
            got = sym_eig(d)
            assert np.allclose(
                np.sort(got.values), np.sort(predicted), atol=1e-8, rtol=1e-8
            )
            # every shared eigenvector stays an eigenvector of d
            for i in range(6):
                v = q[:, i]
                assert np.linalg.norm(d @ v - predicted[i] * v) < 1e-8

    def test_congruence_equivariance(self, rng):
        for _ in range(10):
            k1 = random_spd(rng, 5, cond=100.0)
            k2 = random_spd(rng, 5, cond=100.0)
            q = random_orthogonal(rng, 5)
            lhs = difference_operator(q @ k1 @ q.T, q @ k2 @ q.T)
            rhs = q @ difference_operator(k1, k2) @ q.T
            assert rel_err(lhs, rhs) < 1e-8

    def test_dimension_mismatch(self, rng):
        with pytest.raises(InvalidInput):
            difference_operator(np.eye(3), np.eye(4))
