"""Feedback-law unit tests: branch formulas, continuity, symmetry."""

import numpy as np
import pytest

from fintime_sctl import (
    DETERMINISTIC_COMPONENTWISE,
    DETERMINISTIC_NORM,
    STOCHASTIC_NORM,
    ControllerSpec,
    control_field,
    control_norm,
    control_u,
    control_v,
)


def spec_u(k=2.0, alpha=0.5, scheme=STOCHASTIC_NORM):
    return ControllerSpec(scheme=scheme, k=k, alpha=alpha)


def spec_v(k=5.0, alpha=0.3):
    return ControllerSpec(scheme=DETERMINISTIC_COMPONENTWISE, k=k, alpha=alpha)


class TestValidation:
    def test_rejects_unknown_scheme(self):
        with pytest.raises(ValueError, match="scheme"):
            ControllerSpec(scheme="bang_bang", k=1.0, alpha=0.5)

    def test_rejects_negative_gain(self):
        with pytest.raises(ValueError, match="gain"):
            ControllerSpec(scheme=STOCHASTIC_NORM, k=-1.0, alpha=0.5)

    def test_rejects_alpha_outside_open_interval(self):
        for alpha in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(ValueError, match="alpha"):
                ControllerSpec(scheme=STOCHASTIC_NORM, k=1.0, alpha=alpha)

    def test_zero_gain_is_accepted_as_uncontrolled_baseline(self):
        spec = ControllerSpec(scheme=STOCHASTIC_NORM, k=0.0, alpha=0.5)
        assert np.array_equal(control_u(spec, np.array([3.0, 4.0])), np.zeros(2))

    def test_u_refuses_componentwise_scheme_and_vice_versa(self):
        with pytest.raises(ValueError):
            control_u(spec_v(), np.array([1.0, 0.0, 0.0]))
        with pytest.raises(ValueError):
            control_v(spec_u(), np.array([1.0, 0.0]))


class TestNormBased:
    def test_linear_branch_example(self):
        # k=2, ||x|| = 5 >= 1: u = k*x
        u = control_u(spec_u(), np.array([3.0, 4.0]))
        assert np.array_equal(u, np.array([6.0, 8.0]))

    def test_power_branch_example(self):
        # k=2, alpha=0.5, ||x|| = 0.25: u = 2 * 0.25**(-0.5) * x = 4*x
        u = control_u(spec_u(), np.array([0.25, 0.0]))
        assert np.allclose(u, np.array([1.0, 0.0]), rtol=1e-15)

    def test_origin_maps_to_zero(self):
        assert np.array_equal(control_u(spec_u(), np.zeros(3)), np.zeros(3))
        assert control_norm(spec_u(), np.zeros(3)) == 0.0

    def test_unit_sphere_uses_linear_branch(self):
        x = np.array([1.0, 0.0])
        assert np.array_equal(control_u(spec_u(), x), 2.0 * x)

    def test_norm_law_both_branches(self):
        rng = np.random.default_rng(7)
        spec = spec_u(k=3.0, alpha=0.4)
        for _ in range(300):
            d = rng.integers(1, 6)
            x = rng.normal(size=d)
            r = rng.uniform(0.01, 3.0)
            x = x / np.linalg.norm(x) * r
            expected = spec.k * r if r >= 1.0 else spec.k * r ** spec.alpha
            assert control_norm(spec, x) == pytest.approx(expected, rel=1e-12)
            assert np.linalg.norm(control_u(spec, x)) == pytest.approx(expected, rel=1e-12)

    def test_continuity_across_unit_sphere(self):
        # ||u(x+)|| - ||u(x-)|| -> 0 as the radius crosses 1
        rng = np.random.default_rng(11)
        spec = spec_u(k=4.0, alpha=0.3)
        for _ in range(200):
            d = rng.integers(1, 6)
            v = rng.normal(size=d)
            v /= np.linalg.norm(v)
            delta = rng.uniform(-1e-6, 1e-6)
            inner = control_u(spec, v * (1.0 + min(delta, 0.0)))
            outer = control_u(spec, v * (1.0 + max(delta, 0.0)))
            # both branches linearize around k*v near the sphere
            assert np.linalg.norm(outer - inner) < spec.k * 5e-6

    def test_radial_alignment(self):
        rng = np.random.default_rng(13)
        spec = spec_u(k=2.5, alpha=0.6)
        for _ in range(200):
            x = rng.normal(size=3) * rng.uniform(0.05, 4.0)
            u = control_u(spec, x)
            cross = np.linalg.norm(u) * np.linalg.norm(x) - np.dot(u, x)
            assert cross == pytest.approx(0.0, abs=1e-9)

    def test_odd_symmetry(self):
        rng = np.random.default_rng(17)
        spec = spec_u(k=1.5, alpha=0.2)
        for _ in range(100):
            x = rng.normal(size=4) * rng.uniform(0.01, 5.0)
            assert np.allclose(control_u(spec, -x), -control_u(spec, x), rtol=1e-14)

    def test_deterministic_norm_scheme_shares_the_formula(self):
        x = np.array([0.3, -0.1])
        a = control_u(spec_u(scheme=STOCHASTIC_NORM), x)
        b = control_u(spec_u(scheme=DETERMINISTIC_NORM), x)
        assert np.array_equal(a, b)


class TestComponentwise:
    def test_power_branch_example(self):
        # k=5, alpha=0.3, x inside the ball: per-component power law
        v = control_v(spec_v(), np.array([0.0, 0.5, 0.0]))
        assert np.allclose(v, np.array([0.0, 5.0 * 0.5 ** 0.3, 0.0]), rtol=1e-15)
        assert v[0] == 0.0 and v[2] == 0.0

    def test_linear_branch_outside_ball(self):
        x = np.array([3.0, -4.0])
        assert np.array_equal(control_v(spec_v(), x), 5.0 * x)

    def test_sign_convention_at_zero_component(self):
        v = control_v(spec_v(), np.array([-0.25, 0.0]))
        assert v[1] == 0.0
        assert v[0] == pytest.approx(-5.0 * 0.25 ** 0.3, rel=1e-15)

    def test_jump_across_sphere_is_allowed_but_norm_matches(self):
        rng = np.random.default_rng(19)
        spec = spec_v(k=2.0, alpha=0.4)
        for _ in range(200):
            x = rng.normal(size=3) * rng.uniform(0.05, 3.0)
            v = control_v(spec, x)
            assert control_norm(spec, x) == pytest.approx(np.linalg.norm(v), rel=1e-12)

    def test_odd_symmetry(self):
        rng = np.random.default_rng(23)
        spec = spec_v()
        for _ in range(100):
            x = rng.normal(size=3) * rng.uniform(0.01, 4.0)
            assert np.allclose(control_v(spec, -x), -control_v(spec, x), rtol=1e-14)

    def test_agrees_with_norm_based_outside_ball(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            x = rng.normal(size=3)
            x *= rng.uniform(1.1, 10.0) / np.linalg.norm(x)
            ub = control_u(spec_u(k=3.0, alpha=0.7), x)
            vb = control_v(ControllerSpec(DETERMINISTIC_COMPONENTWISE, 3.0, 0.7), x)
            assert np.array_equal(ub, vb)


def test_control_field_dispatches_by_scheme():
    x = np.array([0.5, 0.5])
    assert np.array_equal(control_field(spec_u(), x), control_u(spec_u(), x))
    assert np.array_equal(control_field(spec_v(), x), control_v(spec_v(), x))
