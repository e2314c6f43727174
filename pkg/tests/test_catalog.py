import math
from fractions import Fraction

import numpy as np
import pytest

from riccilab import catalog
from riccilab.bound import ricci_upper_bound
from riccilab.errors import DomainError
from riccilab.geometry import SpaceFormParams, is_hopf

SQ2 = math.sqrt(2.0)
SQ3 = math.sqrt(3.0)
E3 = np.array([0.0, 0.0, 1.0])
CH2_B_RADIUS = math.log(2.0 + SQ3) / 4.0


class TestSpectrum:
    def test_cp2_sphere_at_equality_radius(self):
        spec = catalog.spectrum("CP2_A1_sphere", math.pi / 6.0, 1.0)
        assert spec.by_name("delta") == pytest.approx(2.0 / SQ3, abs=1e-14)
        assert spec.by_name("lambda") == pytest.approx(SQ3, abs=1e-14)

    def test_ch2_b_tube_frozen_values(self):
        # tanh(2 sqrt|c| r) = 1/sqrt(3) exactly at r = ln(2+sqrt3)/4, and the
        # half-argument values are sqrt3 +- sqrt2
        spec = catalog.spectrum("CH2_B_tube", CH2_B_RADIUS, -1.0)
        assert spec.by_name("delta") == pytest.approx(2.0 / SQ3, abs=1e-14)
        assert spec.by_name("lambda1") == pytest.approx(SQ3 + SQ2, abs=1e-12)
        assert spec.by_name("lambda2") == pytest.approx(SQ3 - SQ2, abs=1e-12)
        assert spec.by_name("lambda1") == pytest.approx(3.14626, abs=5e-6)
        assert spec.by_name("lambda2") == pytest.approx(0.31784, abs=5e-6)

    def test_horosphere(self):
        spec = catalog.spectrum("CH2_A0_horosphere", None, -1.0)
        assert spec.by_name("delta") == 2.0
        assert spec.by_name("lambda") == 1.0
        assert {c.multiplicity for c in spec.curvatures} == {1, 2}

    def test_multiplicities_and_phi_types(self):
        spec = catalog.spectrum("CP2_B_tube", 0.3, 1.0)
        types = {c.name: c.phi_type for c in spec.curvatures}
        assert types == {"delta": "reeb", "lambda1": "e2", "lambda2": "e3"}

    def test_unknown_family(self):
        with pytest.raises(DomainError):
            catalog.spectrum("CP3_exotic", 0.1, 1.0)


class TestDomainValidation:
    def test_cp2_sphere_radius_range(self):
        with pytest.raises(DomainError):
            catalog.spectrum("CP2_A1_sphere", 1.6, 1.0)  # pi/2 = 1.5707...

    def test_cp2_b_radius_range(self):
        with pytest.raises(DomainError):
            catalog.spectrum("CP2_B_tube", 0.8, 1.0)  # pi/4 = 0.7853...

    def test_wrong_c_sign(self):
        with pytest.raises(DomainError):
            catalog.spectrum("CP2_A1_sphere", 0.3, -1.0)
        with pytest.raises(DomainError):
            catalog.spectrum("CH2_B_tube", 0.3, 1.0)

    def test_lohnherr_param_range(self):
        with pytest.raises(DomainError):
            catalog.shape_state("LohnherrEquidistant", 1.0, -1.0)

    def test_tan_profile_pole(self):
        c = 8.0
        s_pole = (math.pi / 2.0) / math.sqrt(27.0 * c / 8.0)
        with pytest.raises(DomainError):
            catalog.shape_state("TanProfile2Hopf", (s_pole, 0.0), c)

    def test_ruled_needs_nonzero_beta(self):
        with pytest.raises(DomainError):
            catalog.spectrum("RuledMinimal", 0.0, -1.0)

    def test_horosphere_takes_no_param(self):
        with pytest.raises(DomainError):
            catalog.spectrum("CH2_A0_horosphere", 0.5, -1.0)


class TestShapeState:
    def test_lohnherr_ruled_limit(self):
        # u = 0 is the ruled minimal hypersurface: A xi = e2, all else 0
        state = catalog.shape_state("LohnherrEquidistant", 0.0, -1.0)
        expected = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        assert np.array_equal(state.a_matrix, expected)

    def test_lohnherr_at_half(self):
        state = catalog.shape_state("LohnherrEquidistant", 0.5, -1.0)
        a = state.a_matrix
        assert a[0, 0] == pytest.approx(1.375)
        assert a[0, 1] == pytest.approx(0.75 ** 1.5)
        assert a[1, 1] == pytest.approx(0.125)
        assert a[2, 2] == pytest.approx(0.5)

    def test_tan_profile_matrix_at_origin(self):
        state = catalog.shape_state("TanProfile2Hopf", (0.0, 0.0), 8.0)
        expected = np.array([[-7.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -2.0]])
        assert np.allclose(state.a_matrix, expected, atol=1e-14)

    def test_hopf_families_are_diagonal(self):
        state = catalog.shape_state("CH2_A11_tube", 0.7, -1.0)
        hopf, delta = is_hopf(state)
        assert hopf
        assert delta == pytest.approx(2.0 / math.tanh(1.4), abs=1e-13)

    def test_b_tube_puts_lambda2_at_e3(self):
        r = 0.31
        state = catalog.shape_state("CP2_B_tube", r, 1.0)
        assert state.a_matrix[2, 2] == pytest.approx(math.tan(r), abs=1e-14)


class TestVerifyEqualityDirection:
    def test_cp2_sphere_equality_at_xi(self):
        check = catalog.verify_equality_direction("CP2_A1_sphere", math.pi / 6.0, 1.0)
        assert check.equality_direction == "xi"
        assert abs(check.condition_residual) <= 1e-12

    def test_cp2_b_tube_equality_at_e3(self):
        check = catalog.verify_equality_direction("CP2_B_tube", math.pi / 6.0, 1.0)
        assert check.equality_direction == "e3"
        assert abs(check.condition_residual) <= 1e-12
        rep = ricci_upper_bound(catalog.shape_state("CP2_B_tube", math.pi / 6.0, 1.0),
                                SpaceFormParams(2, 1.0), E3)
        assert rep.ric == pytest.approx(6.0, abs=1e-12)
        assert rep.bound == pytest.approx(6.0, abs=1e-12)

    def test_horosphere_equality_any_holomorphic_direction(self):
        check = catalog.verify_equality_direction("CH2_A0_horosphere", None, -1.0)
        assert check.equality_direction == "e3"
        assert check.condition_residual == 0.0
        # multiplicity two: e2 achieves it as well
        rep = ricci_upper_bound(catalog.shape_state("CH2_A0_horosphere", None, -1.0),
                                SpaceFormParams(2, -1.0), [0.0, 1.0, 0.0])
        assert rep.equality

    def test_off_radius_has_no_direction(self):
        check = catalog.verify_equality_direction("CP2_A1_sphere", 0.9, 1.0)
        assert check.equality_direction is None
        assert abs(check.condition_residual) > 1e-6

    def test_non_hopf_families_identically_at_e3(self):
        for family, param, c in (("RuledMinimal", 0.8, -1.0),
                                 ("LohnherrEquidistant", -0.4, -2.0),
                                 ("TanProfile2Hopf", (0.03, 0.1), 8.0)):
            check = catalog.verify_equality_direction(family, param, c)
            assert check.equality_direction == "e3"
            assert abs(check.condition_residual) <= 1e-12


def test_hopf_relation_on_dense_grids():
    worst = 0.0
    for family in catalog.HOPF_FAMILIES:
        for i in range(100):
            frac = (i + 0.5) / 100.0
            if family == "CH2_A0_horosphere":
                res = catalog.hopf_residual(family, None, -0.25 - 3.0 * frac)
            elif family.startswith("CP2"):
                hi = math.pi / 2.0 if family == "CP2_A1_sphere" else math.pi / 4.0
                res = catalog.hopf_residual(family, hi * (0.02 + 0.95 * frac), 1.0)
            else:
                res = catalog.hopf_residual(family, 0.05 + 4.0 * frac, -1.0)
            worst = max(worst, abs(res))
    assert worst <= 1e-12


def test_equality_only_at_designated_parameter():
    """Each Hopf family achieves the bound exactly at its theorem radius and
    keeps a strict gap everywhere else on a 1000-point grid."""
    designated = {
        "CP2_A1_sphere": ("xi", math.pi / 6.0),
        "CP2_B_tube": ("e3", math.pi / 6.0),
        "CH2_B_tube": ("xi", CH2_B_RADIUS),
        "CH2_A10_sphere": (None, None),
        "CH2_A11_tube": (None, None),
    }
    for family, (direction, r_star) in designated.items():
        c = 1.0 if family.startswith("CP2") else -1.0
        sf = SpaceFormParams(2, c)
        hi = {"CP2_A1_sphere": math.pi / 2.0, "CP2_B_tube": math.pi / 4.0}.get(family, 5.0)
        for i in range(1000):
            r = hi * (i + 0.5) / 1001.0 + (0.0 if family.startswith("CP2") else 1e-3)
            state = catalog.shape_state(family, r, c)
            near_star = r_star is not None and abs(r - r_star) < hi / 1000.0
            for dname, x in (("xi", [1.0, 0, 0]), ("e2", [0, 1.0, 0]), ("e3", [0, 0, 1.0])):
                rep = ricci_upper_bound(state, sf, x, tol=1e-9)
                if near_star and dname == direction:
                    continue  # grid point straddles the root; handled below
                assert not rep.equality, (family, r, dname)
        if r_star is not None:
            rep = ricci_upper_bound(catalog.shape_state(family, r_star, c), sf,
                                    {"xi": [1.0, 0, 0], "e3": [0, 0, 1.0]}[direction])
            assert rep.equality and abs(rep.gap) <= 1e-10


def test_ruled_minimal_achieves_5c_for_all_beta():
    # Ric(U) = 5c with kappa = 0 and |H| = 0, independently of beta
    for i in range(100):
        beta = 0.05 + 0.1 * i
        for c in (-1.0, 1.0):
            state = catalog.shape_state("RuledMinimal", beta, c)
            rep = ricci_upper_bound(state, SpaceFormParams(2, c), E3)
            assert rep.ric == pytest.approx(5.0 * c, abs=1e-12)
            assert rep.bound == pytest.approx(5.0 * c, abs=1e-12)
            assert rep.equality


def test_lohnherr_trace_identity_exact_rational():
    # alpha = 3 mu - gamma identically: (3u - u^3) + u^3 - 3u = 0 exactly,
    # with beta^2 = |c| (1 - u^2)^3 checked by squaring
    for num, den in ((1, 2), (-3, 7), (9, 10), (0, 1), (-99, 100)):
        u = Fraction(num, den)
        for c_mag in (Fraction(1), Fraction(5, 4)):
            alpha = 3 * u - u ** 3
            gamma = u ** 3
            mu = u
            assert alpha + gamma - 3 * mu == 0
            beta_sq = (1 - u * u) ** 3
            state = catalog.shape_state("LohnherrEquidistant", float(u), -float(c_mag))
            assert state.a_matrix[0, 1] ** 2 == pytest.approx(
                float(c_mag * beta_sq), rel=1e-14)


def test_scaling_law_of_equality_radius():
    # the equality radius scales as 1/sqrt(c): residual vanishes at pi/(6 sqrt c)
    for c in (0.25, 1.0, 4.0, 9.0):
        check = catalog.verify_equality_direction(
            "CP2_A1_sphere", math.pi / (6.0 * math.sqrt(c)), c)
        assert check.equality_direction == "xi"
        assert abs(check.condition_residual) <= 1e-11
