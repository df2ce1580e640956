"""Integration-engine unit tests: streams, stepping, stopping, accounting."""

import numpy as np
import pytest

from fintime_sctl import (
    STOCHASTIC_NORM,
    DETERMINISTIC_NORM,
    BlowupError,
    ControllerSpec,
    SimConfig,
    control_norm,
    control_u,
    em_step,
    eval_f,
    gaussian_increments,
    linear1d,
    simulate_stabilization,
    simulate_synchronization,
    trig2d,
)

K5 = ControllerSpec(STOCHASTIC_NORM, 5.0, 0.5)
K0 = ControllerSpec(STOCHASTIC_NORM, 0.0, 0.5)


def outcome_fields(o):
    return (o.hit, o.tau, o.energy_q, o.ball_crossings, o.censored, o.blowup, o.steps)


class TestIncrements:
    def test_pure_function_of_seed_and_index(self):
        a = gaussian_increments(3, 7, 100, 1e-3)
        b = gaussian_increments(3, 7, 100, 1e-3)
        assert np.array_equal(a, b)

    def test_prefix_consistency(self):
        short = gaussian_increments(3, 7, 10, 1e-3)
        long = gaussian_increments(3, 7, 1000, 1e-3)
        assert np.array_equal(short, long[:10])

    def test_streams_separate_across_indices_and_seeds(self):
        a = gaussian_increments(3, 0, 50, 1e-3)
        assert not np.array_equal(a, gaussian_increments(3, 1, 50, 1e-3))
        assert not np.array_equal(a, gaussian_increments(4, 0, 50, 1e-3))

    def test_variance_scales_with_dt(self):
        w = gaussian_increments(0, 0, 200_000, 2e-3)
        assert np.var(w) == pytest.approx(2e-3, rel=0.02)

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            gaussian_increments(0, 0, -1, 1e-3)
        with pytest.raises(ValueError):
            gaussian_increments(0, 0, 10, 0.0)


class TestEmStep:
    def test_hand_value(self):
        x = em_step(np.array([0.0, 1.0]), np.array([2.0, 0.0]),
                    np.array([1.0, 1.0]), 0.1, 0.5)
        assert np.array_equal(x, np.array([0.7, 1.5]))

    def test_scalar_noise_displaces_components_equally(self):
        # one Brownian driver: with u = [1, 1] both components move by db
        db = 0.123456789
        x1 = em_step(np.zeros(2), np.zeros(2), np.array([1.0, 1.0]), 0.0, db)
        assert x1[0] == x1[1] == db
        # same displacement even for unequal drift contributions
        x2 = em_step(np.array([0.5, 0.5]), np.array([1.0, -2.0]),
                     np.array([1.0, 1.0]), 1e-3, db)
        assert x2[0] - 0.5 - 1e-3 == pytest.approx(x2[1] - 0.5 + 2e-3, rel=1e-12)

    def test_blowup_raises_with_step_index(self):
        with pytest.raises(BlowupError) as err:
            em_step(np.array([1.0]), np.array([np.inf]), np.array([0.0]), 1e-3, 0.0, step_index=17)
        assert err.value.step_index == 17


class TestConfigValidation:
    def test_collects_problems(self):
        with pytest.raises(ValueError, match="dt"):
            SimConfig(dt=-1.0, t_max=1.0)
        with pytest.raises(ValueError, match="t_max"):
            SimConfig(dt=0.5, t_max=0.25)
        with pytest.raises(ValueError, match="eps_stop"):
            SimConfig(dt=1e-3, t_max=1.0, eps_stop=1.0)
        with pytest.raises(ValueError, match="q"):
            SimConfig(dt=1e-3, t_max=1.0, q=0.0)
        with pytest.raises(ValueError, match="seed"):
            SimConfig(dt=1e-3, t_max=1.0, seed=-1)

    def test_state_validation(self):
        cfg = SimConfig(dt=1e-3, t_max=1.0)
        with pytest.raises(ValueError, match="shape"):
            simulate_stabilization(linear1d(), K5, np.array([1.0, 2.0]), cfg)
        with pytest.raises(ValueError, match="finite"):
            simulate_stabilization(linear1d(), K5, np.array([np.nan]), cfg)


class TestStabilization:
    def test_start_inside_capture_radius_hits_immediately(self):
        cfg = SimConfig(dt=1e-3, t_max=1.0, eps_stop=1e-2)
        out = simulate_stabilization(linear1d(), K5, np.array([5e-3]), cfg)
        assert out.hit and out.tau == 0.0 and out.energy_q == 0.0
        assert out.steps == 0 and out.ball_crossings == 0

    def test_exactly_one_terminal_flag(self):
        cfg = SimConfig(dt=1e-5, t_max=5.0, seed=100)
        out = simulate_stabilization(linear1d(), K5, np.array([10.0]), cfg)
        assert sum([out.hit, out.censored, out.blowup]) == 1

    def test_tau_is_a_step_multiple(self):
        cfg = SimConfig(dt=1e-5, t_max=5.0, seed=101)
        out = simulate_stabilization(linear1d(), K5, np.array([10.0]), cfg)
        assert out.hit
        assert out.tau == pytest.approx(out.steps * cfg.dt, rel=1e-14)
        assert abs(out.tau / cfg.dt - round(out.tau / cfg.dt)) < 1e-9

    def test_censoring_is_reported_not_raised(self):
        cfg = SimConfig(dt=1e-5, t_max=0.01, seed=102)
        out = simulate_stabilization(linear1d(), K5, np.array([10.0]), cfg)
        assert out.censored and not out.hit and not out.blowup
        assert out.steps == cfg.n_max
        assert np.isnan(out.tau)
        assert out.energy_q > 0.0

    def test_energy_grows_with_horizon(self):
        cfg1 = SimConfig(dt=1e-5, t_max=0.01, seed=103)
        cfg2 = SimConfig(dt=1e-5, t_max=0.02, seed=103)
        e1 = simulate_stabilization(linear1d(), K5, np.array([10.0]), cfg1).energy_q
        e2 = simulate_stabilization(linear1d(), K5, np.array([10.0]), cfg2).energy_q
        assert 0.0 < e1 < e2

    def test_left_point_energy_quadrature(self):
        # reconstruct a two-step censored run by hand
        model, ctrl = linear1d(2.0), K5
        cfg = SimConfig(dt=0.01, t_max=0.02, q=0.5, seed=104)
        out = simulate_stabilization(model, ctrl, np.array([10.0]), cfg)
        assert out.censored and out.steps == 2
        dw = gaussian_increments(104, 0, 2, 0.01)
        x0 = np.array([10.0])
        x1 = em_step(x0, eval_f(model, x0), control_u(ctrl, x0), 0.01, dw[0])
        expected = (control_norm(ctrl, x0) ** 0.5 + control_norm(ctrl, x1) ** 0.5) * 0.01
        assert out.energy_q == pytest.approx(expected, rel=1e-12)
        x2 = em_step(x1, eval_f(model, x1), control_u(ctrl, x1), 0.01, dw[1])
        assert np.allclose(out.final_state, x2, rtol=1e-12)

    def test_deterministic_rerun_is_bit_identical(self):
        cfg = SimConfig(dt=1e-5, t_max=5.0, seed=105, realization_index=9)
        a = simulate_stabilization(linear1d(), K5, np.array([10.0]), cfg)
        b = simulate_stabilization(linear1d(), K5, np.array([10.0]), cfg)
        assert outcome_fields(a) == outcome_fields(b)
        assert np.array_equal(a.final_state, b.final_state)

    def test_realization_index_selects_distinct_paths(self):
        cfg0 = SimConfig(dt=1e-5, t_max=5.0, seed=106, realization_index=0)
        cfg1 = SimConfig(dt=1e-5, t_max=5.0, seed=106, realization_index=1)
        a = simulate_stabilization(linear1d(), K5, np.array([10.0]), cfg0)
        b = simulate_stabilization(linear1d(), K5, np.array([10.0]), cfg1)
        assert a.tau != b.tau

    def test_matches_manual_reconstruction_across_chunk_boundary(self):
        # 70000 steps spans the internal chunk size; the end state must
        # equal a hand-rolled loop over the same increment stream
        model, ctrl = linear1d(2.0), K5
        cfg = SimConfig(dt=1e-5, t_max=0.7, eps_stop=1e-12, q=0.5, seed=107)
        out = simulate_stabilization(model, ctrl, np.array([10.0]), cfg)
        assert out.censored and out.steps == 70000
        dw = gaussian_increments(107, 0, 70000, 1e-5)
        x = np.array([10.0])
        for j in range(70000):
            x = em_step(x, eval_f(model, x), control_u(ctrl, x), 1e-5, dw[j])
        assert np.array_equal(out.final_state, x)

    def test_crossing_counter_odd_for_outside_start_hit(self):
        cfg = SimConfig(dt=1e-5, t_max=5.0, seed=108)
        out = simulate_stabilization(linear1d(), K5, np.array([10.0]), cfg)
        assert out.hit
        assert out.ball_crossings >= 1
        assert out.ball_crossings % 2 == 1

    def test_blowup_reported_distinctly(self):
        cfg = SimConfig(dt=1e-3, t_max=20.0, seed=109)
        out = simulate_stabilization(linear1d(2.0), K0, np.array([10.0]), cfg)
        assert out.blowup and not out.hit and not out.censored
        assert out.steps < cfg.n_max
        assert np.linalg.norm(out.final_state) > 1e12

    def test_deterministic_norm_scheme_consumes_no_noise(self):
        ctrl = ControllerSpec(DETERMINISTIC_NORM, 5.0, 0.5)
        cfg_a = SimConfig(dt=1e-4, t_max=5.0, seed=1)
        cfg_b = SimConfig(dt=1e-4, t_max=5.0, seed=2)
        a = simulate_stabilization(linear1d(), ctrl, np.array([10.0]), cfg_a)
        b = simulate_stabilization(linear1d(), ctrl, np.array([10.0]), cfg_b)
        assert a.hit and b.hit
        assert a.tau == b.tau and a.energy_q == b.energy_q


class TestEulerLimit:
    def test_zero_gain_reduces_to_explicit_euler(self):
        # dx = 2x dt from 1.0 for one unit of time: (1 + 2*dt)**(1/dt) -> e**2
        cfg = SimConfig(dt=1e-5, t_max=1.0, eps_stop=1e-9, seed=0)
        out = simulate_stabilization(linear1d(2.0), K0, np.array([1.0]), cfg)
        assert out.censored
        # stepwise rounding accumulates ~1e-11 relative to the closed form
        assert out.final_state[0] == pytest.approx((1.0 + 2e-5) ** 100_000, rel=1e-9)
        assert out.final_state[0] == pytest.approx(np.exp(2.0), rel=1e-2)


class TestSynchronization:
    def test_equal_starts_hit_immediately(self):
        cfg = SimConfig(dt=1e-3, t_max=1.0)
        out = simulate_synchronization(trig2d(), K5, np.array([0.0, 1.0]),
                                       np.array([0.0, 1.0]), cfg)
        assert out.hit and out.tau == 0.0

    def test_coupled_follower_locks_on(self):
        ctrl = ControllerSpec(STOCHASTIC_NORM, 3.0, 0.5)
        cfg = SimConfig(dt=1e-4, t_max=10.0, q=0.1, seed=110)
        out = simulate_synchronization(trig2d(), ctrl, np.array([0.0, 1.0]),
                                       np.array([1.0, 0.0]), cfg)
        assert out.hit
        assert np.linalg.norm(out.final_state) <= cfg.eps_stop

    def test_uncoupled_mismatch_persists_and_costs_nothing(self):
        cfg = SimConfig(dt=1e-4, t_max=2.0, seed=111)
        out = simulate_synchronization(trig2d(), K0, np.array([0.0, 1.0]),
                                       np.array([1.0, 0.0]), cfg)
        assert not out.hit
        assert out.energy_q == 0.0
        assert np.linalg.norm(out.final_state) > cfg.eps_stop

    def test_mismatch_step_reconstruction(self):
        # first step: leader and follower advance with the same drift rule,
        # feedback and noise act on the follower only
        model = trig2d()
        ctrl = ControllerSpec(STOCHASTIC_NORM, 3.0, 0.5)
        cfg = SimConfig(dt=0.01, t_max=0.03, q=0.1, seed=112)
        x0, y0 = np.array([0.0, 1.0]), np.array([1.0, 0.0])
        out = simulate_synchronization(model, ctrl, x0, y0, cfg)
        dw = gaussian_increments(112, 0, out.steps, 0.01)
        x, y = x0.copy(), y0.copy()
        for j in range(out.steps):
            u = control_u(ctrl, y - x)
            x_new = x + eval_f(model, x) * 0.01
            y_new = y + eval_f(model, y) * 0.01 + u * dw[j]
            x, y = x_new, y_new
        assert np.allclose(out.final_state, y - x, rtol=1e-12, atol=1e-15)
