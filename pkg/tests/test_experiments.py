"""Ensemble and sweep unit tests: accounting, purity, sweep mechanics."""

import numpy as np
import pytest

from fintime_sctl import (
    DETERMINISTIC_NORM,
    STOCHASTIC_NORM,
    ControllerSpec,
    Experiment,
    SimConfig,
    compare_schemes,
    draw_ecosystem,
    hindmarsh_rose,
    linear1d,
    may_ecosystem,
    run_ensemble,
    simulate_stabilization,
    sweep,
    t_f_sup,
    InitialLaw,
)


def linear_exp(k=5.0, n=20, t_max=2.0, dt=1e-4, seed=50, x0=10.0, alpha=0.5):
    return Experiment(
        model=linear1d(2.0),
        ctrl=ControllerSpec(STOCHASTIC_NORM, k, alpha),
        x0=np.array([x0]),
        cfg=SimConfig(dt=dt, t_max=t_max, q=0.5, seed=seed),
        n_realizations=n,
    )


class TestEnsemble:
    def test_counts_partition_the_ensemble(self):
        # short horizon forces a mix of hits and censored runs
        ens = run_ensemble(linear_exp(k=3.0, n=40, t_max=0.6))
        assert ens.n_total == 40
        assert ens.n_total == ens.n_hit + ens.n_censored + ens.n_blowup
        assert ens.n_hit > 0 and ens.n_censored > 0

    def test_moments_use_hit_runs_only(self):
        ens = run_ensemble(linear_exp(k=3.0, n=40, t_max=0.6))
        taus = [o.tau for o in ens.outcomes if o.hit]
        energies = [o.energy_q for o in ens.outcomes if o.hit]
        assert ens.mean_tau == pytest.approx(np.mean(taus), rel=1e-14)
        assert ens.std_tau == pytest.approx(np.std(taus, ddof=1), rel=1e-12)
        assert ens.mean_energy == pytest.approx(np.mean(energies), rel=1e-14)

    def test_all_censored_yields_none_moments(self):
        ens = run_ensemble(linear_exp(k=3.0, n=5, t_max=0.01))
        assert ens.n_censored == 5
        assert ens.mean_tau is None and ens.std_tau is None
        assert ens.mean_energy is None
        assert ens.mean_crossings == 0.0

    def test_realizations_match_standalone_runs(self):
        exp = linear_exp(n=5)
        ens = run_ensemble(exp)
        for i, out in enumerate(ens.outcomes):
            cfg_i = SimConfig(dt=exp.cfg.dt, t_max=exp.cfg.t_max, q=exp.cfg.q,
                              seed=exp.cfg.seed, realization_index=i)
            solo = simulate_stabilization(exp.model, exp.ctrl, exp.x0, cfg_i)
            assert out.tau == solo.tau and out.energy_q == solo.energy_q

    def test_thread_count_does_not_change_results(self):
        a = run_ensemble(linear_exp(n=16), jobs=1)
        b = run_ensemble(linear_exp(n=16), jobs=4)
        assert a.mean_tau == b.mean_tau
        assert a.mean_energy == b.mean_energy
        assert [o.tau for o in a.outcomes] == [o.tau for o in b.outcomes]

    def test_bound_report_attached_when_defined(self):
        ens = run_ensemble(linear_exp(n=3))
        rep = ens.bound_report
        assert rep is not None and rep.feasible
        law = InitialLaw.point(np.array([10.0]))
        assert rep.t_f_sup == pytest.approx(t_f_sup(2.0, 5.0, 0.5, law), rel=1e-14)

    def test_bound_report_absent_without_growth_constant(self):
        exp = Experiment(
            model=hindmarsh_rose(),
            ctrl=ControllerSpec(STOCHASTIC_NORM, 6.0, 0.5),
            x0=np.array([0.0, 0.0, 1.0]),
            cfg=SimConfig(dt=1e-3, t_max=0.1, q=0.1, seed=51),
            n_realizations=2,
            y0=np.array([0.0, 0.0, 2.0]),
        )
        assert run_ensemble(exp).bound_report is None

    def test_bound_report_absent_for_zero_gain(self):
        ens = run_ensemble(linear_exp(k=0.0, n=2, t_max=0.01))
        assert ens.bound_report is None

    def test_validation(self):
        with pytest.raises(ValueError):
            linear_exp(n=0)


class TestSweep:
    def test_rows_sorted_by_value(self):
        rows = sweep("k", [7.0, 3.0, 5.0], linear_exp(n=4, t_max=0.5))
        assert [r.swept_value for r in rows] == [3.0, 5.0, 7.0]
        assert [r.k for r in rows] == [3.0, 5.0, 7.0]
        assert all(r.ensemble is not None for r in rows)

    def test_alpha_sweep_replaces_alpha(self):
        rows = sweep("alpha", [0.3, 0.7], linear_exp(n=3, t_max=0.5))
        assert [r.alpha for r in rows] == [0.3, 0.7]
        assert all(r.k == 5.0 for r in rows)

    def test_bad_value_becomes_row_error(self):
        rows = sweep("k", [-1.0, 5.0], linear_exp(n=3, t_max=0.5))
        assert rows[0].error is not None and rows[0].ensemble is None
        assert rows[1].error is None and rows[1].ensemble is not None

    def test_unknown_param_rejected(self):
        with pytest.raises(ValueError, match="param"):
            sweep("dt", [1e-3], linear_exp())

    def test_community_size_sweep_derives_gain_per_draw(self):
        template = may_ecosystem(draw_ecosystem(5, 1.0, 1 / 3, 1.0, seed=52))
        base = Experiment(
            model=template,
            ctrl=ControllerSpec(STOCHASTIC_NORM, 1.0, 0.5),
            x0=np.ones(5),
            cfg=SimConfig(dt=1e-4, t_max=20.0, q=0.1, seed=53),
            n_realizations=3,
        )
        rows = sweep("N", [10, 5], base)
        assert [r.swept_value for r in rows] == [5.0, 10.0]
        for row in rows:
            rep = row.ensemble.bound_report
            assert rep is not None
            # derived gain 1.1*sqrt(2*eta) against the draw's own constant
            assert row.k == pytest.approx(1.1 * np.sqrt(2.0 * rep.L), rel=1e-12)
            assert rep.feasible
            n = int(row.swept_value)
            assert row.ensemble.params_echo["x0"] == [1.0] * n

    def test_community_size_sweep_needs_ecosystem_model(self):
        rows = sweep("N", [4], linear_exp(n=2, t_max=0.5))
        assert rows[0].error is not None


class TestRedraw:
    def test_redraw_changes_paths(self):
        draw = draw_ecosystem(6, 1.0, 0.5, 1.0, seed=54)
        common = dict(
            ctrl=ControllerSpec(STOCHASTIC_NORM, 4.0, 0.5),
            x0=np.ones(6),
            cfg=SimConfig(dt=1e-4, t_max=5.0, q=0.1, seed=55),
            n_realizations=3,
        )
        fixed = run_ensemble(Experiment(model=may_ecosystem(draw), **common))
        redrawn = run_ensemble(Experiment(model=may_ecosystem(draw),
                                          redraw_ecosystem=True, **common))
        fixed_taus = [o.tau for o in fixed.outcomes]
        redrawn_taus = [o.tau for o in redrawn.outcomes]
        assert fixed_taus != redrawn_taus

    def test_redraw_is_deterministic(self):
        draw = draw_ecosystem(6, 1.0, 0.5, 1.0, seed=56)
        exp = Experiment(
            model=may_ecosystem(draw),
            ctrl=ControllerSpec(STOCHASTIC_NORM, 4.0, 0.5),
            x0=np.ones(6),
            cfg=SimConfig(dt=1e-4, t_max=5.0, q=0.1, seed=57),
            n_realizations=3,
            redraw_ecosystem=True,
        )
        a = run_ensemble(exp)
        b = run_ensemble(exp)
        assert [o.tau for o in a.outcomes] == [o.tau for o in b.outcomes]


class TestCompare:
    def test_pairs_ordered_with_stochastic_first(self):
        rows = compare_schemes(linear_exp(n=6, t_max=3.0), [5.0, 3.0])
        assert [(r.swept_value, r.scheme) for r in rows] == [
            (3.0, STOCHASTIC_NORM), (3.0, DETERMINISTIC_NORM),
            (5.0, STOCHASTIC_NORM), (5.0, DETERMINISTIC_NORM),
        ]
        for row in rows:
            if row.scheme == DETERMINISTIC_NORM:
                assert row.ensemble.n_total == 1
            else:
                assert row.ensemble.n_total == 6

    def test_deterministic_rows_report_their_own_feasibility(self):
        rows = compare_schemes(linear_exp(n=2, t_max=3.0), [1.5, 5.0])
        det = {r.swept_value: r for r in rows if r.scheme == DETERMINISTIC_NORM}
        assert det[1.5].ensemble.bound_report.feasible is False   # k < L = 2
        assert det[5.0].ensemble.bound_report.feasible is True
        assert det[5.0].ensemble.bound_report.t_f_sup is None

    def test_deterministic_feasible_gain_hits(self):
        rows = compare_schemes(linear_exp(n=2, t_max=5.0), [5.0])
        det = [r for r in rows if r.scheme == DETERMINISTIC_NORM][0]
        assert det.ensemble.n_hit == det.ensemble.n_total
