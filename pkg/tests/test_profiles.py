import math

import numpy as np
import pytest

from weighted_moser import (
    FOUR_PI,
    HalfLineProfile,
    InvalidProfileError,
    PreconditionError,
    QuadratureSpec,
    RadialProfile,
    WeightExponent,
    dirichlet_norm_halfline,
    dirichlet_norm_radial,
    halfline_exp_integral,
    halfline_functional,
    integrate,
    read_profile,
    weighted_exp_functional,
    write_profile,
)


def tent(n=65):
    g = np.linspace(0.0, 1.0, n)
    return RadialProfile(g, 1.0 - g)


class TestWeightExponent:
    def test_derived_quantities(self):
        w = WeightExponent(2.0)
        assert w.epsilon == pytest.approx(0.5)
        assert w.star_radius == pytest.approx(math.sqrt(0.5))
        assert w.mu_total == pytest.approx(math.pi * w.star_radius**2)

    def test_alpha_zero_is_unweighted(self):
        w = WeightExponent(0.0)
        assert w.epsilon == 1.0
        assert w.star_radius == 1.0

    def test_negative_alpha_rejected(self):
        with pytest.raises(PreconditionError):
            WeightExponent(-0.5)


class TestProfileValidation:
    def test_grid_must_start_at_zero(self):
        with pytest.raises(InvalidProfileError):
            RadialProfile([0.1, 1.0], [1.0, 0.0])

    def test_non_monotone_grid_rejected(self):
        with pytest.raises(InvalidProfileError):
            RadialProfile([0.0, 0.5, 0.5, 1.0], [1.0, 0.5, 0.5, 0.0])

    def test_nan_values_rejected(self):
        with pytest.raises(InvalidProfileError):
            RadialProfile([0.0, 1.0], [math.nan, 0.0])

    def test_halfline_tail_must_match_last_value(self):
        with pytest.raises(InvalidProfileError):
            HalfLineProfile([0.0, 1.0], [0.0, 1.0], tail_value=2.0)

    def test_halfline_tail_defaults_to_last_value(self):
        w = HalfLineProfile([0.0, 1.0, 3.0], [0.0, 1.0, 2.0])
        assert w.tail_value == 2.0
        assert w(10.0) == 2.0
        assert w(0.5) == pytest.approx(0.5)


class TestDirichletNorms:
    def test_tent_norm_is_pi(self):
        # slope -1 everywhere: 2 pi * int_0^1 r dr = pi
        assert dirichlet_norm_radial(tent()) == pytest.approx(math.pi, abs=1e-14)

    def test_zero_profile(self):
        z = RadialProfile([0.0, 1.0], [0.0, 0.0])
        assert dirichlet_norm_radial(z) == 0.0

    def test_parabola_norm(self):
        # u = 1 - r^2: 2 pi int_0^1 4 r^3 dr = 2 pi
        g = np.linspace(0.0, 1.0, 256)
        u = RadialProfile(g, 1.0 - g**2)
        assert dirichlet_norm_radial(u) == pytest.approx(2.0 * math.pi, abs=1e-3)

    def test_halfline_ramp(self):
        n = 7
        g = np.linspace(0.0, float(n), 12)
        w = HalfLineProfile(g, g / math.sqrt(n))
        assert dirichlet_norm_halfline(w) == pytest.approx(1.0, abs=1e-12)


class TestWeightedExpFunctional:
    def test_zero_profile_gives_zero(self):
        z = RadialProfile([0.0, 1.0], [0.0, 0.0])
        for alpha in (0.0, 1.0, 3.0):
            assert weighted_exp_functional(z, WeightExponent(alpha), FOUR_PI) == 0.0

    def test_plateau_limit(self):
        # u = c on [0, 1 - delta], tapered: value -> (e^{gamma c^2}-1) * 2 pi/(alpha+2)
        c, delta, alpha, gamma = 0.7, 1e-4, 1.0, 2.0
        g = np.array([0.0, 1.0 - delta, 1.0])
        u = RadialProfile(g, [c, c, 0.0])
        expected = math.expm1(gamma * c * c) * 2.0 * math.pi / (alpha + 2.0)
        got = weighted_exp_functional(u, WeightExponent(alpha), gamma)
        assert got == pytest.approx(expected, rel=1e-3)

    def test_gamma_monotonicity(self):
        u = tent()
        w = WeightExponent(0.5)
        v1 = weighted_exp_functional(u, w, 1.0)
        v2 = weighted_exp_functional(u, w, 2.0)
        assert 0.0 < v1 < v2

    def test_alpha_monotonicity(self):
        u = tent()
        v1 = weighted_exp_functional(u, WeightExponent(0.5), FOUR_PI)
        v2 = weighted_exp_functional(u, WeightExponent(1.5), FOUR_PI)
        assert v1 > v2 > 0.0

    def test_overflow_reports_infinity(self):
        u = RadialProfile([0.0, 0.5, 1.0], [30.0, 10.0, 0.0])
        assert weighted_exp_functional(u, WeightExponent(0.0), FOUR_PI) == math.inf

    def test_gamma_must_be_positive(self):
        with pytest.raises(PreconditionError):
            weighted_exp_functional(tent(), WeightExponent(0.0), 0.0)


class TestHalflineFunctional:
    def test_zero_profile_gives_one(self):
        w = HalfLineProfile([0.0, 10.0], [0.0, 0.0])
        for alpha in (0.0, 1.0):
            assert halfline_functional(w, WeightExponent(alpha)) == pytest.approx(1.0, abs=1e-9)

    def test_closed_form_tail(self):
        # w = 0 up to T: integral = (1 - e^{-T}) + e^{-T} exactly
        w = HalfLineProfile([0.0, 3.0], [0.0, 0.0])
        assert halfline_exp_integral(w, 0.9) == pytest.approx(1.0, abs=1e-10)

    def test_linear_ramp_beta_zero(self):
        w = HalfLineProfile([0.0, 5.0], [0.0, 5.0])
        # beta = 0: integral of e^{-t} = 1
        assert halfline_exp_integral(w, 0.0) == pytest.approx(1.0, abs=1e-9)


class TestQuadrature:
    def test_adaptive_polynomial_exact(self):
        val = integrate(lambda x: x**3, [0.0, 1.0, 2.0])
        assert val == pytest.approx(4.0, abs=1e-12)

    def test_simpson_method(self):
        spec = QuadratureSpec(method="composite-simpson", abs_tol=1e-10)
        val = integrate(lambda x: np.exp(x), [0.0, 1.0], spec)
        assert val == pytest.approx(math.e - 1.0, abs=1e-9)

    def test_refinement_convergence(self):
        loose = QuadratureSpec(abs_tol=1e-6)
        tight = QuadratureSpec(abs_tol=1e-12)
        f = lambda x: np.exp(np.sin(3.0 * x))
        a = integrate(f, [0.0, 2.0], loose)
        b = integrate(f, [0.0, 2.0], tight)
        assert abs(a - b) < 4e-6

    def test_invalid_spec_rejected(self):
        with pytest.raises(PreconditionError):
            QuadratureSpec(method="monte-carlo")
        with pytest.raises(PreconditionError):
            QuadratureSpec(abs_tol=0.0)


class TestFileIO:
    def test_radial_round_trip(self, tmp_path):
        u = tent(33)
        path = tmp_path / "tent.csv"
        write_profile(path, u)
        back = read_profile(path)
        assert isinstance(back, RadialProfile)
        np.testing.assert_array_equal(back.grid, u.grid)
        np.testing.assert_array_equal(back.values, u.values)

    def test_halfline_round_trip(self, tmp_path):
        w = HalfLineProfile([0.0, 1.0, 4.0], [0.0, 0.5, 2.0])
        path = tmp_path / "w.csv"
        write_profile(path, w)
        back = read_profile(path)
        assert isinstance(back, HalfLineProfile)
        np.testing.assert_array_equal(back.values, w.values)
        assert back.tail_value == w.tail_value

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,y\n0,1\n1,0\n")
        with pytest.raises(InvalidProfileError):
            read_profile(path)

    def test_malformed_row_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("r,u\n0,1\noops\n")
        with pytest.raises(InvalidProfileError):
            read_profile(path)
