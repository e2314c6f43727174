import math

import numpy as np
import pytest

from riccilab.geometry import (
    AdaptedFrame,
    ShapeState,
    SpaceFormParams,
    curvature_report,
    hopf_relation_residual,
    is_hopf,
    mean_curvature_norm,
    normal_curvature,
    ricci_direct,
    ricci_tensor_sum,
    shape_state_n2,
)

SQ3 = math.sqrt(3.0)
XI = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


def random_state(rng, n):
    dim = 2 * n - 1
    a = rng.uniform(-2.0, 2.0, size=(dim, dim))
    return ShapeState(AdaptedFrame.standard(n), (a + a.T) / 2.0)


class TestSpaceFormParams:
    def test_rejects_flat(self):
        with pytest.raises(ValueError):
            SpaceFormParams(2, 0.0)

    def test_rejects_low_dimension(self):
        with pytest.raises(ValueError):
            SpaceFormParams(1, 1.0)

    def test_dim(self):
        assert SpaceFormParams(3, -2.0).dim == 5


class TestAdaptedFrame:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_phi_invariants_exact(self, n):
        AdaptedFrame.standard(n).check_invariants(tol=0.0)

    def test_n2_phi_action(self):
        frame = AdaptedFrame.standard(2)
        assert np.array_equal(frame.phi(E2), E3)
        assert np.array_equal(frame.phi(E3), -E2)
        assert np.array_equal(frame.phi(XI), np.zeros(3))


class TestRicciDirect:
    def test_flat_shape_operator_at_xi(self):
        sf = SpaceFormParams(2, 1.0)
        state = shape_state_n2(np.zeros((3, 3)))
        assert ricci_direct(state, sf, XI) == pytest.approx(2.0, abs=1e-14)

    def test_equality_sphere_at_xi(self):
        # diag(2/sqrt(3), sqrt(3), sqrt(3)): Ric(xi) = 2 + (8/sqrt3)(2/sqrt3) - 4/3 = 6
        sf = SpaceFormParams(2, 1.0)
        state = shape_state_n2(np.diag([2.0 / SQ3, SQ3, SQ3]))
        assert ricci_direct(state, sf, XI) == pytest.approx(6.0, abs=1e-12)

    def test_matches_tensor_sum_on_random_input(self):
        rng = np.random.default_rng(7)
        sf = SpaceFormParams(2, -1.3)
        state = random_state(rng, 2)
        x = rng.normal(size=3)
        x /= np.linalg.norm(x)
        assert ricci_direct(state, sf, x) == pytest.approx(
            ricci_tensor_sum(state, sf, x), abs=1e-12)

    def test_rejects_non_unit_direction(self):
        sf = SpaceFormParams(2, 1.0)
        state = shape_state_n2(np.eye(3))
        with pytest.raises(ValueError):
            ricci_direct(state, sf, [1.0, 1.0, 0.0])


class TestRicciTensorSum:
    def test_flat_shape_operator_holomorphic_direction(self):
        # |phi e2|^2 = 1, so Ric = c(2 + 3)
        sf = SpaceFormParams(2, 1.0)
        state = shape_state_n2(np.zeros((3, 3)))
        assert ricci_tensor_sum(state, sf, E2) == pytest.approx(5.0, abs=1e-14)

    def test_horosphere_direction_e3(self):
        # hand oracle: 5c + mu (Tr A - mu) with mu = 1 gives -2
        sf = SpaceFormParams(2, -1.0)
        state = shape_state_n2(np.diag([2.0, 1.0, 1.0]))
        assert ricci_tensor_sum(state, sf, E3) == pytest.approx(-2.0, abs=1e-14)

    @pytest.mark.parametrize("n", [2, 3])
    def test_cross_oracle_on_frame_vectors(self, n):
        rng = np.random.default_rng(100 + n)
        state = random_state(rng, n)
        for c in (-2.0, 0.7):
            sf = SpaceFormParams(n, c)
            for i in range(2 * n - 1):
                x = np.zeros(2 * n - 1)
                x[i] = 1.0
                assert ricci_direct(state, sf, x) == pytest.approx(
                    ricci_tensor_sum(state, sf, x), abs=1e-12)


def test_oracle_equivalence_random_sweep():
    rng = np.random.default_rng(2024)
    for i in range(300):
        n = 2 if i % 2 == 0 else 3
        state = random_state(rng, n)
        sf = SpaceFormParams(n, float(rng.uniform(0.2, 2.0)) * (-1) ** i)
        x = rng.normal(size=2 * n - 1)
        x /= np.linalg.norm(x)
        diff = ricci_direct(state, sf, x) - ricci_tensor_sum(state, sf, x)
        assert abs(diff) <= 1e-11


def test_ricci_invariant_under_phi_commuting_rotation():
    # rotations of the e2-e3 plane fix xi and commute with phi for n = 2
    rng = np.random.default_rng(55)
    sf = SpaceFormParams(2, 1.7)
    for _ in range(25):
        state = random_state(rng, 2)
        x = rng.normal(size=3)
        x /= np.linalg.norm(x)
        th = float(rng.uniform(0, 2 * math.pi))
        rot = np.array([[1.0, 0.0, 0.0],
                        [0.0, math.cos(th), -math.sin(th)],
                        [0.0, math.sin(th), math.cos(th)]])
        phi = state.frame.phi_matrix
        assert np.allclose(rot @ phi, phi @ rot, atol=1e-15)
        rotated = ShapeState(state.frame, rot.T @ state.a_matrix @ rot)
        assert ricci_direct(rotated, sf, rot.T @ x) == pytest.approx(
            ricci_direct(state, sf, x), abs=1e-11)


class TestNormalCurvature:
    def test_identity_operator(self):
        state = shape_state_n2(np.eye(3))
        assert normal_curvature(state, E2) == 1.0

    def test_sphere_spectrum_at_xi(self):
        state = shape_state_n2(np.diag([2.0 / SQ3, SQ3, SQ3]))
        assert normal_curvature(state, XI) == pytest.approx(2.0 / SQ3, abs=1e-15)

    def test_bilinearity_on_diagonal(self):
        state = shape_state_n2(np.diag([0.3, -1.2, 4.0]))
        x = np.array([1.0, 1.0, 0.0]) / math.sqrt(2.0)
        assert normal_curvature(state, x) == pytest.approx((0.3 - 1.2) / 2.0, abs=1e-15)


class TestMeanCurvatureNorm:
    def test_zero(self):
        assert mean_curvature_norm(shape_state_n2(np.zeros((3, 3)))) == 0.0

    def test_type_b_spectrum(self):
        state = shape_state_n2(np.diag([2.0 * SQ3, -SQ3, 1.0 / SQ3]))
        assert mean_curvature_norm(state) == pytest.approx(4.0 / (3.0 * SQ3), abs=1e-15)

    def test_identity(self):
        assert mean_curvature_norm(shape_state_n2(np.eye(3))) == pytest.approx(1.0)


class TestIsHopf:
    def test_diagonal_is_hopf(self):
        hopf, delta = is_hopf(shape_state_n2(np.diag([0.4, 1.0, 1.0])), tol=1e-9)
        assert hopf and delta == pytest.approx(0.4)

    def test_off_diagonal_is_not(self):
        a = np.array([[0.4, 0.5, 0.0], [0.5, 1.0, 0.0], [0.0, 0.0, 1.0]])
        hopf, delta = is_hopf(shape_state_n2(a), tol=1e-9)
        assert not hopf and delta is None

    def test_lohnherr_matrix_is_not_hopf(self):
        # u = 1/2, c = -1: off-diagonal beta = (3/4)^{3/2} ~ 0.6495
        beta = 0.75 ** 1.5
        a = np.array([[1.375, beta, 0.0], [beta, 0.125, 0.0], [0.0, 0.0, 0.5]])
        hopf, _ = is_hopf(shape_state_n2(a), tol=1e-9)
        assert not hopf
        assert beta == pytest.approx(0.6495, abs=5e-5)

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            is_hopf(shape_state_n2(np.eye(3)), tol=0.0)


class TestHopfRelation:
    def test_horosphere(self):
        assert hopf_relation_residual(2.0, 1.0, 1.0, -1.0) == 0.0

    def test_cp2_type_b_at_pi_sixth(self):
        # oracle: substitution of the Type B spectrum at r = pi/6, c = 1
        assert hopf_relation_residual(2.0 * SQ3, -SQ3, 1.0 / SQ3, 1.0) == (
            pytest.approx(0.0, abs=1e-14))

    def test_trivial_balance(self):
        assert hopf_relation_residual(0.0, 1.0, 1.0, 1.0) == 0.0


def test_curvature_report_fields():
    sf = SpaceFormParams(2, 1.0)
    state = shape_state_n2(np.diag([2.0 / SQ3, SQ3, SQ3]))
    rep = curvature_report(state, sf, XI)
    assert rep.ric == pytest.approx(6.0, abs=1e-12)
    assert rep.kappa == pytest.approx(2.0 / SQ3)
    assert rep.mean_norm == pytest.approx(8.0 / (3.0 * SQ3))
    assert rep.phi_norm_sq == 0.0
    rep2 = curvature_report(state, sf, E2)
    assert rep2.phi_norm_sq == pytest.approx(1.0)
    assert 0.0 <= rep2.phi_norm_sq <= 1.0
