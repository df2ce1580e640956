"""Monte Carlo ensembles, parameter sweeps, and scheme comparisons.

An ensemble runs ``n`` independent realizations of one configuration,
differing only in ``realization_index``, and reduces them to hitting and
energy statistics next to the closed-form ceilings when those exist.
Realizations are embarrassingly parallel; results do not depend on
execution order or on the number of worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .bounds import BoundReport, InitialLaw, bound_report
from .controllers import DETERMINISTIC_NORM, STOCHASTIC_NORM, ControllerSpec
from .engine import RunOutcome, SimConfig, simulate_stabilization, simulate_synchronization
from .models import ModelSpec, draw_ecosystem, lipschitz_L, may_ecosystem

SWEEP_PARAMS = ("k", "alpha", "N")

GAIN_MARGIN = 1.1  # derived gain in N-sweeps: 1.1 * sqrt(2 * eta_max)


@dataclass(frozen=True, eq=False)
class Experiment:
    """One fully specified ensemble: model, feedback, start, numerics, size."""

    model: ModelSpec
    ctrl: ControllerSpec
    x0: np.ndarray
    cfg: SimConfig
    n_realizations: int
    y0: np.ndarray | None = None
    redraw_ecosystem: bool = False

    def __post_init__(self) -> None:
        if self.n_realizations < 1:
            raise ValueError(f"n_realizations must be >= 1, got {self.n_realizations}")

    @property
    def mode(self) -> str:
        return "synchronize" if self.y0 is not None else "stabilize"


@dataclass(frozen=True, eq=False)
class EnsembleResult:
    """Reduced statistics of one ensemble.

    Counts always satisfy ``n_total == n_hit + n_censored + n_blowup``.
    Time and energy moments are taken over hit realizations only and are
    None when there are none (std additionally needs at least two);
    ``mean_crossings`` averages over non-blowup realizations.
    """

    n_total: int
    n_hit: int
    n_censored: int
    n_blowup: int
    mean_tau: float | None
    std_tau: float | None
    mean_energy: float | None
    std_energy: float | None
    mean_crossings: float | None
    bound_report: BoundReport | None
    params_echo: dict
    outcomes: tuple[RunOutcome, ...] = field(repr=False, default=())

    @property
    def max_crossings(self) -> int:
        return max((o.ball_crossings for o in self.outcomes), default=0)


@dataclass(frozen=True, eq=False)
class SweepRow:
    """One swept value with its ensemble, or the error that prevented it."""

    swept_name: str
    swept_value: float
    scheme: str
    k: float
    alpha: float
    q: float
    ensemble: EnsembleResult | None
    error: str | None = None


def run_ensemble(exp: Experiment, jobs: int | None = None) -> EnsembleResult:
    """Run all realizations of ``exp`` and reduce them.

    ``jobs`` caps worker threads; any value yields identical results.
    With ``redraw_ecosystem`` every realization of a random-ecosystem
    model gets a fresh interaction matrix derived from the draw seed and
    the realization index.
    """
    outcomes = _run_realizations(exp, jobs)
    return _reduce(exp, outcomes)


def sweep(param: str, values, base: Experiment, jobs: int | None = None) -> list[SweepRow]:
    """Re-run ``base`` for each value of ``param`` (``k``, ``alpha`` or ``N``).

    Rows come back ordered by swept value.  A failing value produces a
    row carrying the error message instead of aborting the sweep.  An
    ``N`` sweep redraws the ecosystem for every community size (matrix
    seed derived from the base draw seed and N), starts from the all-ones
    state, and derives the gain as ``1.1*sqrt(2*eta_max)`` from the
    draw's exact top eigenvalue.
    """
    if param not in SWEEP_PARAMS:
        raise ValueError(f"sweep param must be one of {SWEEP_PARAMS}, got {param!r}")
    rows: list[SweepRow] = []
    for value in sorted(values):
        try:
            exp = _with_value(param, value, base)
            ens = run_ensemble(exp, jobs=jobs)
            rows.append(SweepRow(
                swept_name=param, swept_value=float(value), scheme=exp.ctrl.scheme,
                k=exp.ctrl.k, alpha=exp.ctrl.alpha, q=exp.cfg.q, ensemble=ens,
            ))
        except Exception as err:  # record and keep sweeping
            k = base.ctrl.k if param != "k" else float(value)
            alpha = base.ctrl.alpha if param != "alpha" else float(value)
            rows.append(SweepRow(
                swept_name=param, swept_value=float(value), scheme=base.ctrl.scheme,
                k=k, alpha=alpha, q=base.cfg.q, ensemble=None, error=str(err),
            ))
    return rows


def compare_schemes(base: Experiment, k_values, n_deterministic: int = 1,
                    deterministic_scheme: str = DETERMINISTIC_NORM,
                    jobs: int | None = None) -> list[SweepRow]:
    """Stochastic scheme versus a deterministic comparator over a gain grid.

    For every gain the stochastic ensemble keeps the base realization
    count while the noiseless comparator defaults to a single run (its
    trajectories are identical across realizations).  Rows are ordered
    by gain, stochastic first.
    """
    rows: list[SweepRow] = []
    for k in sorted(k_values):
        for scheme, n in ((STOCHASTIC_NORM, base.n_realizations), (deterministic_scheme, n_deterministic)):
            ctrl = ControllerSpec(scheme=scheme, k=float(k), alpha=base.ctrl.alpha)
            exp = replace(base, ctrl=ctrl, n_realizations=n)
            try:
                ens = run_ensemble(exp, jobs=jobs)
                rows.append(SweepRow(
                    swept_name="k", swept_value=float(k), scheme=scheme,
                    k=float(k), alpha=base.ctrl.alpha, q=base.cfg.q, ensemble=ens,
                ))
            except Exception as err:
                rows.append(SweepRow(
                    swept_name="k", swept_value=float(k), scheme=scheme,
                    k=float(k), alpha=base.ctrl.alpha, q=base.cfg.q, ensemble=None,
                    error=str(err),
                ))
    return rows


def _run_realizations(exp: Experiment, jobs: int | None) -> list[RunOutcome]:
    jobs = 1 if jobs is None else max(1, int(jobs))

    def one(i: int) -> RunOutcome:
        cfg_i = replace(exp.cfg, realization_index=i)
        model = _model_for_realization(exp, i)
        if exp.y0 is not None:
            return simulate_synchronization(model, exp.ctrl, exp.x0, exp.y0, cfg_i)
        return simulate_stabilization(model, exp.ctrl, exp.x0, cfg_i)

    indices = range(exp.n_realizations)
    if jobs == 1:
        return [one(i) for i in indices]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, indices))


def _model_for_realization(exp: Experiment, i: int) -> ModelSpec:
    if not (exp.redraw_ecosystem and exp.model.name == "may_ecosystem"):
        return exp.model
    base_draw = exp.model.draw
    seed = int(np.random.SeedSequence([base_draw.seed, i]).generate_state(1)[0])
    return may_ecosystem(draw_ecosystem(base_draw.N, base_draw.r, base_draw.p,
                                        base_draw.sigma, seed))


def _reduce(exp: Experiment, outcomes: list[RunOutcome]) -> EnsembleResult:
    n_hit = sum(o.hit for o in outcomes)
    n_censored = sum(o.censored for o in outcomes)
    n_blowup = sum(o.blowup for o in outcomes)
    taus = np.array([o.tau for o in outcomes if o.hit])
    energies = np.array([o.energy_q for o in outcomes if o.hit])
    crossings = np.array([o.ball_crossings for o in outcomes if not o.blowup])

    report = None
    L = lipschitz_L(exp.model)
    if L is not None and exp.ctrl.k > 0.0:
        z0 = exp.x0 if exp.y0 is None else exp.y0 - exp.x0
        report = bound_report(L, exp.ctrl.k, exp.ctrl.alpha, exp.cfg.q,
                              InitialLaw.point(z0), scheme=exp.ctrl.scheme)

    return EnsembleResult(
        n_total=len(outcomes),
        n_hit=n_hit,
        n_censored=n_censored,
        n_blowup=n_blowup,
        mean_tau=float(np.mean(taus)) if n_hit else None,
        std_tau=float(np.std(taus, ddof=1)) if n_hit > 1 else None,
        mean_energy=float(np.mean(energies)) if n_hit else None,
        std_energy=float(np.std(energies, ddof=1)) if n_hit > 1 else None,
        mean_crossings=float(np.mean(crossings)) if crossings.size else None,
        bound_report=report,
        params_echo=_echo(exp),
        outcomes=tuple(outcomes),
    )


def _with_value(param: str, value, base: Experiment) -> Experiment:
    if param == "k":
        return replace(base, ctrl=replace(base.ctrl, k=float(value)))
    if param == "alpha":
        return replace(base, ctrl=replace(base.ctrl, alpha=float(value)))
    # N sweep: fresh community of size N, derived gain, all-ones start
    if base.model.name != "may_ecosystem" or base.model.draw is None:
        raise ValueError("N sweep requires a may_ecosystem model with a draw")
    N = int(value)
    if N != value or N < 1:
        raise ValueError(f"N values must be positive integers, got {value}")
    tpl = base.model.draw
    seed = int(np.random.SeedSequence([tpl.seed, N]).generate_state(1)[0])
    draw = draw_ecosystem(N, tpl.r, tpl.p, tpl.sigma, seed)
    if draw.eta_max_empirical <= 0.0:
        raise ValueError(f"cannot derive a gain: top eigenvalue {draw.eta_max_empirical} <= 0")
    k = GAIN_MARGIN * float(np.sqrt(2.0 * draw.eta_max_empirical))
    return replace(
        base,
        model=may_ecosystem(draw),
        ctrl=replace(base.ctrl, k=k),
        x0=np.ones(N),
    )


def _echo(exp: Experiment) -> dict:
    return {
        "model": exp.model.name,
        "model_params": list(exp.model.params),
        "scheme": exp.ctrl.scheme,
        "k": exp.ctrl.k,
        "alpha": exp.ctrl.alpha,
        "q": exp.cfg.q,
        "dt": exp.cfg.dt,
        "t_max": exp.cfg.t_max,
        "eps_stop": exp.cfg.eps_stop,
        "seed": exp.cfg.seed,
        "n_realizations": exp.n_realizations,
        "mode": exp.mode,
        "x0": np.asarray(exp.x0, dtype=float).tolist(),
        "y0": None if exp.y0 is None else np.asarray(exp.y0, dtype=float).tolist(),
        "redraw_ecosystem": exp.redraw_ecosystem,
    }
