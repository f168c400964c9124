import math

import numpy as np
import pytest

from weighted_moser import (
    FOUR_PI,
    PreconditionError,
    RadialProfile,
    WeightExponent,
    dirichlet_norm_halfline,
    dirichlet_norm_radial,
    full_pipeline_identity,
    moser_inverse,
    moser_transform,
    ssw_functional_identity,
    ssw_inverse,
    ssw_transform,
)


def tent(n=65):
    g = np.linspace(0.0, 1.0, n)
    return RadialProfile(g, 1.0 - g)


def random_profile(rng, nodes=64, peak=0.6):
    interior = np.sort(rng.uniform(0.02, 0.98, nodes - 2))
    grid = np.concatenate([[0.0], interior, [1.0]])
    values = np.concatenate([rng.uniform(0.0, peak, nodes - 1), [0.0]])
    return RadialProfile(grid, values)


class TestSswTransform:
    def test_alpha_zero_is_identity(self):
        u = tent()
        v = ssw_transform(u, WeightExponent(0.0))
        np.testing.assert_allclose(v.grid, u.grid, atol=1e-15)
        np.testing.assert_allclose(v.values, u.values, atol=1e-15)

    def test_symbolic_case_alpha_two(self):
        # u = 1 - r, eps = 1/2: v(rho) = sqrt(2) (1 - rho^{1/2})
        u = tent(101)
        v = ssw_transform(u, WeightExponent(2.0))
        expected = math.sqrt(2.0) * (1.0 - np.sqrt(v.grid))
        np.testing.assert_allclose(v.values, expected, atol=1e-12)

    def test_norm_preserved(self):
        u = tent(201)
        for alpha in (0.5, 1.0, 3.0):
            v = ssw_transform(u, WeightExponent(alpha), refine=64)
            assert dirichlet_norm_radial(v) == pytest.approx(
                dirichlet_norm_radial(u), rel=1e-5
            )

    def test_round_trip_exact_at_nodes(self):
        u = random_profile(np.random.default_rng(7))
        w = WeightExponent(1.3)
        back = ssw_inverse(ssw_transform(u, w), w)
        np.testing.assert_allclose(back.grid, u.grid, atol=1e-12)
        np.testing.assert_allclose(back.values, u.values, atol=1e-12)

    def test_requires_unit_interval(self):
        u = RadialProfile([0.0, 0.5], [1.0, 0.0])
        with pytest.raises(PreconditionError):
            ssw_transform(u, WeightExponent(1.0))


class TestSswFunctionalIdentity:
    def test_zero_profile(self):
        z = RadialProfile([0.0, 1.0], [0.0, 0.0])
        rep = ssw_functional_identity(z, WeightExponent(1.0))
        assert rep.lhs == 0.0
        assert rep.rhs == pytest.approx(0.0, abs=1e-12)

    def test_tent_various_alpha(self):
        u = tent()
        for alpha in (0.1, 1.0, 2.5):
            rep = ssw_functional_identity(u, WeightExponent(alpha))
            assert rep.rel_diff < 1e-8

    def test_random_profiles(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            u = random_profile(rng)
            rep = ssw_functional_identity(u, WeightExponent(0.7))
            assert rep.rel_diff < 1e-8


class TestMoserTransform:
    def test_zero_profile(self):
        v = RadialProfile([0.0, 1.0], [0.0, 0.0])
        w = moser_transform(v)
        assert np.all(w.values == 0.0)
        assert w.tail_value == 0.0

    def test_log_profile_maps_to_linear(self):
        # v = c ln(1/rho) maps to w(t) = sqrt(4 pi) c t / 2
        c = 0.3
        rho = np.concatenate([[0.0], np.geomspace(1e-10, 1.0, 200)])
        v = RadialProfile(rho, np.where(rho > 0, -c * np.log(np.maximum(rho, 1e-300)), c * math.log(1e10)))
        w = moser_transform(v, t_max=40.0)
        expected = math.sqrt(FOUR_PI) * c * w.grid / 2.0
        # interior nodes are exact images of grid nodes; the final node at
        # t_max interpolates between log-spaced samples, so compare loosely
        np.testing.assert_allclose(w.values[:-1], expected[:-1], atol=1e-9)
        np.testing.assert_allclose(w.values[-1], expected[-1], atol=1e-2)

    def test_norm_identity(self):
        u = tent(301)
        weight = WeightExponent(1.0)
        v = ssw_transform(u, weight, refine=8)
        w = moser_transform(v, refine=8)
        assert dirichlet_norm_halfline(w) == pytest.approx(
            dirichlet_norm_radial(u), rel=1e-4
        )

    def test_round_trip(self):
        v = tent(33)
        w = moser_transform(v, t_max=30.0)
        back = moser_inverse(w)
        # nodes away from the origin round-trip exactly; the origin picks up
        # the truncation at rho = exp(-t_max/2)
        np.testing.assert_allclose(back(v.grid[1:]), v.values[1:], atol=1e-12)
        assert back(0.0) == pytest.approx(v.values[0], abs=1e-6)

    def test_nonzero_boundary_rejected(self):
        v = RadialProfile([0.0, 1.0], [1.0, 0.5])
        with pytest.raises(PreconditionError):
            moser_transform(v)


class TestFullPipelineIdentity:
    def test_zero_profile(self):
        z = RadialProfile([0.0, 1.0], [0.0, 0.0])
        rep = full_pipeline_identity(z, WeightExponent(2.0))
        assert rep.lhs == 0.0
        assert rep.rhs == pytest.approx(0.0, abs=1e-12)

    def test_candidate_value_alpha_zero(self):
        # pulled-back candidate should reproduce pi (e + (2/e) int e^{s^2} - 1)
        from weighted_moser import carleson_chang_candidate, gauss_integral

        u = moser_inverse(carleson_chang_candidate())
        rep = full_pipeline_identity(u, WeightExponent(0.0))
        expected = math.pi * (math.e + gauss_integral() / math.e - 1.0)
        assert rep.lhs == pytest.approx(expected, abs=2e-3)
        assert rep.rel_diff < 1e-8

    def test_random_profiles(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            u = random_profile(rng)
            rep = full_pipeline_identity(u, WeightExponent(0.5))
            assert rep.rel_diff < 1e-7

    def test_boundary_condition_required(self):
        u = RadialProfile([0.0, 1.0], [1.0, 0.3])
        with pytest.raises(PreconditionError):
            full_pipeline_identity(u, WeightExponent(1.0))
