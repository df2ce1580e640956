"""Command line front end: run experiments described by a config file.

Subcommands
-----------
bounds     print and save the closed-form report for one configuration
simulate   one stabilization ensemble
sync       one leader-follower ensemble
sweep      re-run an ensemble over a grid of k, alpha, or community size N
compare    stochastic scheme versus deterministic comparator over a gain grid

Configs are YAML (JSON works too).  Every run writes
``<prefix>_rows.csv`` and ``<prefix>_manifest`` into the output
directory; the manifest is a JSON echo of the fully resolved config and
can itself be passed back via ``--config`` to reproduce the CSV byte for
byte.  Exit codes: 0 success, 1 bad config or I/O failure, 2 infeasible
or inadmissible bounds request, 3 every realization blew up.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np
import yaml

from . import models as models_mod
from .bounds import InitialLaw, bound_report
from .controllers import (
    DETERMINISTIC_COMPONENTWISE,
    DETERMINISTIC_NORM,
    SCHEMES,
    STOCHASTIC_NORM,
    ControllerSpec,
)
from .engine import SimConfig
from .experiments import Experiment, SweepRow, compare_schemes, run_ensemble, sweep
from .models import MODEL_NAMES, ModelSpec, lipschitz_L

ENV_JOBS = "FINTIME_SCTL_JOBS"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INFEASIBLE = 2
EXIT_BLOWUP = 3

CSV_COLUMNS = (
    "swept_name", "swept_value", "scheme", "k", "alpha", "q",
    "n_total", "n_hit", "n_censored", "n_blowup",
    "mean_tau", "std_tau", "mean_energy", "std_energy", "mean_crossings",
    "t_f_sup", "e_q_sup", "feasible",
)

_COMMANDS = ("bounds", "simulate", "sync", "sweep", "compare")

_MODEL_PARAM_KEYS = {
    "linear1d": {"L"},
    "neural2d": set(),
    "may_ecosystem": {"file", "N", "r", "p", "sigma", "matrix_seed"},
    "hindmarsh_rose": {"eps"},
    "lorenz": {"sigma", "rho", "beta"},
    "trig2d": set(),
}


class ConfigError(Exception):
    """Carries every violation found while validating a config."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    """A validated config resolved to library objects plus its JSON echo."""

    command: str
    config: dict
    model: ModelSpec
    ctrl: ControllerSpec
    sim: SimConfig | None
    energy_q: float
    n_realizations: int
    mode: str
    x0: np.ndarray | None
    y0: np.ndarray | None
    sweep_param: str | None
    sweep_values: list | None
    compare_k_values: list | None
    n_deterministic: int
    deterministic_scheme: str
    redraw_ecosystem: bool
    outdir: str
    prefix: str


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        raw = _load_config(args.config)
        resolved = resolve_config(raw, args.command, seed_override=args.seed,
                                  out_override=args.out)
        jobs = _resolve_jobs(args.jobs)
    except ConfigError as err:
        for problem in err.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "bounds":
            return cmd_bounds(resolved, quiet=args.quiet)
        return cmd_rows(resolved, jobs=jobs, quiet=args.quiet)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG


def cmd_bounds(res: ExperimentConfig, quiet: bool = False) -> int:
    """Closed-form report for the configured model, controller, and order."""
    L = lipschitz_L(res.model)
    z0 = res.x0 if res.y0 is None else res.y0 - res.x0
    problems = []
    if L is None:
        problems.append(f"model {res.model.name!r} has no one-sided growth constant")
    if res.ctrl.k <= 0.0:
        problems.append(f"gain k={res.ctrl.k} cannot achieve finite-time convergence")

    if problems:
        payload = {"feasible": False, "scheme": res.ctrl.scheme, "k": res.ctrl.k,
                   "alpha": res.ctrl.alpha, "q": res.energy_q,
                   "L": L, "t_f_sup": None, "e_q_sup": None, "notes": problems}
        rc = EXIT_INFEASIBLE
    else:
        rep = bound_report(L, res.ctrl.k, res.ctrl.alpha, res.energy_q,
                           InitialLaw.point(z0), scheme=res.ctrl.scheme)
        payload = {
            "scheme": rep.scheme, "L": rep.L, "k": rep.k, "alpha": rep.alpha, "q": rep.q,
            "feasible": rep.feasible, "p_star": rep.p_star, "alpha_case": rep.alpha_case,
            "h2_at_choice": rep.h2_at_choice, "t_f_sup": rep.t_f_sup,
            "q_admissible": rep.q_admissible, "h2_q": rep.h2_q, "e_q_sup": rep.e_q_sup,
            "notes": [],
        }
        if not rep.feasible:
            if rep.scheme == STOCHASTIC_NORM:
                need = math.sqrt(2.0 * L) if L > 0 else 0.0
                payload["notes"].append(
                    f"gain k={rep.k} violates the feasibility inequality k > sqrt(2*L) = {need}")
            else:
                payload["notes"].append(
                    f"gain k={rep.k} violates the feasibility inequality k > L = {L}")
            rc = EXIT_INFEASIBLE
        elif rep.scheme == STOCHASTIC_NORM and not rep.q_admissible:
            payload["notes"].append(
                f"energy order q={rep.q} outside (0, min(2 - 2*alpha, 1 - 2*L/k**2))")
            rc = EXIT_INFEASIBLE
        else:
            rc = EXIT_OK

    if not quiet or rc != EXIT_OK:
        for key in sorted(payload):
            print(f"{key}: {payload[key]}")
    _ensure_outdir(res.outdir)
    _write_atomic(os.path.join(res.outdir, f"{res.prefix}_bounds.json"),
                  json.dumps(payload, sort_keys=True, indent=2) + "\n")
    _write_manifest(res)
    return rc


def cmd_rows(res: ExperimentConfig, jobs: int | None = None, quiet: bool = False) -> int:
    """Run simulate / sync / sweep / compare and emit CSV plus manifest."""
    base = Experiment(
        model=res.model,
        ctrl=res.ctrl,
        x0=res.x0 if res.x0 is not None else np.ones(res.model.dim),
        cfg=res.sim,
        n_realizations=res.n_realizations,
        y0=res.y0,
        redraw_ecosystem=res.redraw_ecosystem,
    )
    if res.command in ("simulate", "sync"):
        ens = run_ensemble(base, jobs=jobs)
        rows = [SweepRow(swept_name="", swept_value=None, scheme=res.ctrl.scheme,
                         k=res.ctrl.k, alpha=res.ctrl.alpha, q=res.energy_q, ensemble=ens)]
    elif res.command == "sweep":
        rows = sweep(res.sweep_param, res.sweep_values, base, jobs=jobs)
    else:
        rows = compare_schemes(base, res.compare_k_values,
                               n_deterministic=res.n_deterministic,
                               deterministic_scheme=res.deterministic_scheme, jobs=jobs)

    _ensure_outdir(res.outdir)
    _write_atomic(os.path.join(res.outdir, f"{res.prefix}_rows.csv"), rows_to_csv(rows))
    _write_manifest(res)

    total = sum(r.ensemble.n_total for r in rows if r.ensemble is not None)
    blown = sum(r.ensemble.n_blowup for r in rows if r.ensemble is not None)
    if not quiet:
        for row in rows:
            print(_row_summary(row))
        print(f"wrote {os.path.join(res.outdir, res.prefix + '_rows.csv')}")
    for row in rows:
        if row.error is not None:
            print(f"warning: {row.swept_name}={row.swept_value}: {row.error}", file=sys.stderr)
    if total > 0 and blown == total:
        print("error: every realization blew up", file=sys.stderr)
        return EXIT_BLOWUP
    return EXIT_OK


def rows_to_csv(rows: list[SweepRow]) -> str:
    """Render sweep rows into the fixed-schema CSV text."""
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        ens = row.ensemble
        rep = ens.bound_report if ens is not None else None
        cells = [
            row.swept_name,
            _fmt(row.swept_value),
            row.scheme,
            _fmt(row.k),
            _fmt(row.alpha),
            _fmt(row.q),
            _fmt(ens.n_total if ens else None),
            _fmt(ens.n_hit if ens else None),
            _fmt(ens.n_censored if ens else None),
            _fmt(ens.n_blowup if ens else None),
            _fmt(ens.mean_tau if ens else None),
            _fmt(ens.std_tau if ens else None),
            _fmt(ens.mean_energy if ens else None),
            _fmt(ens.std_energy if ens else None),
            _fmt(ens.mean_crossings if ens else None),
            _fmt(rep.t_f_sup if rep else None),
            _fmt(rep.e_q_sup if rep else None),
            _fmt(rep.feasible if rep else None),
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def resolve_config(raw: dict, command: str, seed_override: int | None = None,
                   out_override: str | None = None) -> ExperimentConfig:
    """Validate ``raw`` for ``command`` and build library objects.

    Collects every violation (with its field path) before failing.  A
    manifest produced by an earlier run is accepted transparently.
    """
    errs: list[str] = []
    if not isinstance(raw, dict):
        raise ConfigError(["config root must be a mapping"])
    if set(raw.keys()) == {"command", "config"}:
        if raw["command"] != command:
            raise ConfigError(
                [f"manifest was written by {raw['command']!r}, rerun with that subcommand"])
        raw = raw["config"]
        if not isinstance(raw, dict):
            raise ConfigError(["manifest config must be a mapping"])

    known = {"model", "controller", "sim", "energy", "initial", "sweep", "compare",
             "output", "mode"}
    for key in raw:
        if key not in known:
            errs.append(f"{key}: unknown section")

    model, dim = _resolve_model(raw, errs, seed_override)
    ctrl = _resolve_controller(raw, errs)
    sim_required = command != "bounds"
    sim, energy_q, n_real = _resolve_sim(raw, errs, seed_override, required=sim_required)

    mode = raw.get("mode")
    initial = raw.get("initial") or {}
    if not isinstance(initial, dict):
        errs.append("initial: must be a mapping")
        initial = {}
    has_y0 = initial.get("y0") is not None
    if mode is None:
        mode = "synchronize" if has_y0 else "stabilize"
    elif mode not in ("stabilize", "synchronize"):
        errs.append(f"mode: must be 'stabilize' or 'synchronize', got {mode!r}")
        mode = "stabilize"
    if command == "simulate" and mode != "stabilize":
        errs.append("mode: the simulate command runs stabilize mode only")
    if command == "sync" and mode != "synchronize":
        errs.append("mode: the sync command needs mode 'synchronize' (set initial.y0)")
    if command == "sync":
        mode = "synchronize"

    sweep_param, sweep_values = _resolve_sweep(raw, errs, command)
    x0_optional = command == "sweep" and sweep_param == "N"
    x0 = _resolve_state(initial, "x0", dim, errs, optional=x0_optional)
    y0 = _resolve_state(initial, "y0", dim, errs, optional=True)
    if mode == "synchronize" and y0 is None:
        errs.append("initial.y0: required in synchronize mode")
    if mode == "stabilize" and y0 is not None and command != "bounds":
        errs.append("initial.y0: only meaningful in synchronize mode")
    if sweep_param == "N" and mode == "synchronize":
        errs.append("sweep.param: N sweeps run in stabilize mode only")

    compare_k, n_det, det_scheme = _resolve_compare(raw, errs, command)
    outdir, prefix = _resolve_output(raw, errs, command, out_override)

    if errs:
        raise ConfigError(errs)

    config_echo = _materialize(raw, command, model, ctrl, sim, energy_q, n_real, mode,
                               initial, sweep_param, sweep_values, compare_k, n_det,
                               det_scheme, outdir, prefix)
    return ExperimentConfig(
        command=command, config=config_echo, model=model, ctrl=ctrl, sim=sim,
        energy_q=energy_q, n_realizations=n_real, mode=mode, x0=x0,
        y0=y0 if mode == "synchronize" or command == "bounds" else None,
        sweep_param=sweep_param, sweep_values=sweep_values, compare_k_values=compare_k,
        n_deterministic=n_det, deterministic_scheme=det_scheme,
        redraw_ecosystem=bool((raw.get("model") or {}).get("redraw_per_realization", False)),
        outdir=outdir, prefix=prefix,
    )


def _resolve_model(raw: dict, errs: list[str], seed_override: int | None):
    section = raw.get("model")
    if not isinstance(section, dict):
        errs.append("model: required mapping with a 'name'")
        return None, None
    name = section.get("name")
    if name not in MODEL_NAMES:
        errs.append(f"model.name: expected one of {MODEL_NAMES}, got {name!r}")
        return None, None
    params = section.get("params") or {}
    if not isinstance(params, dict):
        errs.append("model.params: must be a mapping")
        return None, None
    extra = set(params) - _MODEL_PARAM_KEYS[name]
    if extra:
        errs.append(f"model.params: unknown keys for {name}: {sorted(extra)}")

    def fnum(key, default=None, positive=False):
        val = params.get(key, default)
        if val is None:
            errs.append(f"model.params.{key}: required for {name}")
            return None
        if not isinstance(val, (int, float)) or isinstance(val, bool) or not np.isfinite(val):
            errs.append(f"model.params.{key}: must be a finite number, got {val!r}")
            return None
        if positive and val <= 0:
            errs.append(f"model.params.{key}: must be > 0, got {val}")
            return None
        return float(val)

    try:
        if name == "linear1d":
            L = fnum("L", default=2.0)
            return (models_mod.linear1d(L), 1) if L is not None else (None, None)
        if name == "neural2d":
            return models_mod.neural2d(), 2
        if name == "hindmarsh_rose":
            eps = fnum("eps", default=0.005, positive=True)
            return (models_mod.hindmarsh_rose(eps), 3) if eps is not None else (None, None)
        if name == "lorenz":
            s = fnum("sigma", default=6.0)
            r = fnum("rho", default=10.0)
            b = fnum("beta", default=3.0)
            if None in (s, r, b):
                return None, None
            return models_mod.lorenz(s, r, b), 3
        if name == "trig2d":
            return models_mod.trig2d(), 2
        # may_ecosystem: from file or drawn from explicit parameters
        if "file" in params:
            path = params["file"]
            if not isinstance(path, str):
                errs.append(f"model.params.file: must be a path string, got {path!r}")
                return None, None
            try:
                draw = models_mod.load_ecosystem(path)
            except (OSError, ValueError) as err:
                errs.append(f"model.params.file: cannot load ecosystem: {err}")
                return None, None
            return models_mod.may_ecosystem(draw), draw.N
        N = params.get("N")
        if not isinstance(N, int) or isinstance(N, bool) or N < 1:
            errs.append(f"model.params.N: must be a positive integer, got {N!r}")
            return None, None
        r = fnum("r")
        p = fnum("p")
        sigma = fnum("sigma", positive=True)
        mseed = params.get("matrix_seed", (raw.get("sim") or {}).get("seed", 0))
        if seed_override is not None and "matrix_seed" not in params:
            mseed = seed_override
        if not isinstance(mseed, int) or isinstance(mseed, bool) or mseed < 0:
            errs.append(f"model.params.matrix_seed: must be a non-negative integer, got {mseed!r}")
            return None, None
        if None in (r, p, sigma):
            return None, None
        if not 0.0 < p <= 1.0:
            errs.append(f"model.params.p: must lie in (0, 1], got {p}")
            return None, None
        draw = models_mod.draw_ecosystem(N, r, p, sigma, mseed)
        return models_mod.may_ecosystem(draw), N
    except ValueError as err:
        errs.append(f"model: {err}")
        return None, None


def _resolve_controller(raw: dict, errs: list[str]) -> ControllerSpec | None:
    section = raw.get("controller")
    if not isinstance(section, dict):
        errs.append("controller: required mapping with 'k' and 'alpha'")
        return None
    scheme = section.get("scheme", STOCHASTIC_NORM)
    k = section.get("k")
    alpha = section.get("alpha")
    local = []
    if scheme not in SCHEMES:
        local.append(f"controller.scheme: expected one of {SCHEMES}, got {scheme!r}")
    if not isinstance(k, (int, float)) or isinstance(k, bool) or not np.isfinite(k) or k < 0:
        local.append(f"controller.k: must be a finite number >= 0, got {k!r}")
    if not isinstance(alpha, (int, float)) or isinstance(alpha, bool) or not 0 < alpha < 1:
        local.append(f"controller.alpha: must lie in (0, 1), got {alpha!r}")
    errs.extend(local)
    if local:
        return None
    return ControllerSpec(scheme=scheme, k=float(k), alpha=float(alpha))


def _resolve_sim(raw: dict, errs: list[str], seed_override: int | None, required: bool):
    energy = raw.get("energy") or {}
    if not isinstance(energy, dict):
        errs.append("energy: must be a mapping")
        energy = {}
    q = energy.get("q", 0.5)
    if not isinstance(q, (int, float)) or isinstance(q, bool) or not (np.isfinite(q) and q > 0):
        errs.append(f"energy.q: must be a finite number > 0, got {q!r}")
        q = 0.5
    q = float(q)

    section = raw.get("sim")
    if section is None:
        if required:
            errs.append("sim: required mapping (dt, t_max, realizations)")
        return None, q, 1
    if not isinstance(section, dict):
        errs.append("sim: must be a mapping")
        return None, q, 1
    local = []

    def fnum(key, default=None):
        val = section.get(key, default)
        if not isinstance(val, (int, float)) or isinstance(val, bool) or not np.isfinite(val):
            local.append(f"sim.{key}: must be a finite number, got {val!r}")
            return None
        return float(val)

    dt = fnum("dt")
    t_max = fnum("t_max")
    eps_stop = fnum("eps_stop", default=1e-4)
    seed = section.get("seed", 0)
    n_real = section.get("realizations", 1)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        local.append(f"sim.seed: must be a non-negative integer, got {seed!r}")
    if seed_override is not None:
        seed = seed_override
    if not isinstance(n_real, int) or isinstance(n_real, bool) or n_real < 1:
        local.append(f"sim.realizations: must be a positive integer, got {n_real!r}")
    if not local:
        try:
            return SimConfig(dt=dt, t_max=t_max, eps_stop=eps_stop, q=q,
                             seed=int(seed)), q, int(n_real)
        except ValueError as err:
            local.append(f"sim: {err}")
    errs.extend(local)
    return None, q, 1


def _resolve_state(initial: dict, key: str, dim: int | None, errs: list[str],
                   optional: bool) -> np.ndarray | None:
    val = initial.get(key)
    if val is None:
        if not optional:
            errs.append(f"initial.{key}: required list of numbers")
        return None
    if not isinstance(val, (list, tuple)) or not val or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) and np.isfinite(v)
            for v in val):
        errs.append(f"initial.{key}: must be a non-empty list of finite numbers")
        return None
    arr = np.asarray(val, dtype=float)
    if dim is not None and arr.shape != (dim,):
        errs.append(f"initial.{key}: expected {dim} components for this model, got {arr.size}")
        return None
    return arr


def _resolve_sweep(raw: dict, errs: list[str], command: str):
    section = raw.get("sweep")
    if command != "sweep":
        if section is not None:
            errs.append("sweep: section only valid for the sweep command")
        return None, None
    if not isinstance(section, dict):
        errs.append("sweep: required mapping with 'param' and 'values'")
        return None, None
    param = section.get("param")
    values = section.get("values")
    if param not in ("k", "alpha", "N"):
        errs.append(f"sweep.param: expected 'k', 'alpha' or 'N', got {param!r}")
        return None, None
    if not isinstance(values, (list, tuple)) or not values:
        errs.append("sweep.values: must be a non-empty list")
        return param, None
    ok = True
    for v in values:
        if param == "N":
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                errs.append(f"sweep.values: N values must be positive integers, got {v!r}")
                ok = False
        elif not isinstance(v, (int, float)) or isinstance(v, bool) or not np.isfinite(v):
            errs.append(f"sweep.values: must be finite numbers, got {v!r}")
            ok = False
        elif param == "alpha" and not 0 < v < 1:
            errs.append(f"sweep.values: alpha values must lie in (0, 1), got {v}")
            ok = False
        elif param == "k" and v < 0:
            errs.append(f"sweep.values: k values must be >= 0, got {v}")
            ok = False
    return param, list(values) if ok else None


def _resolve_compare(raw: dict, errs: list[str], command: str):
    section = raw.get("compare")
    if command != "compare":
        if section is not None:
            errs.append("compare: section only valid for the compare command")
        return None, 1, DETERMINISTIC_NORM
    if not isinstance(section, dict):
        errs.append("compare: required mapping with 'k_values'")
        return None, 1, DETERMINISTIC_NORM
    k_values = section.get("k_values")
    n_det = section.get("n_deterministic", 1)
    det_scheme = section.get("deterministic_scheme", DETERMINISTIC_NORM)
    ok = True
    if not isinstance(k_values, (list, tuple)) or not k_values or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool)
            and np.isfinite(v) and v >= 0 for v in k_values):
        errs.append("compare.k_values: must be a non-empty list of finite numbers >= 0")
        ok = False
    if not isinstance(n_det, int) or isinstance(n_det, bool) or n_det < 1:
        errs.append(f"compare.n_deterministic: must be a positive integer, got {n_det!r}")
        n_det = 1
    if det_scheme not in (DETERMINISTIC_NORM, DETERMINISTIC_COMPONENTWISE):
        errs.append(
            f"compare.deterministic_scheme: must be a deterministic scheme, got {det_scheme!r}")
        det_scheme = DETERMINISTIC_NORM
    return (list(k_values) if ok else None), n_det, det_scheme


def _resolve_output(raw: dict, errs: list[str], command: str, out_override: str | None):
    section = raw.get("output") or {}
    if not isinstance(section, dict):
        errs.append("output: must be a mapping")
        section = {}
    outdir = section.get("dir", "out")
    prefix = section.get("prefix", command)
    if not isinstance(outdir, str) or not outdir:
        errs.append(f"output.dir: must be a non-empty string, got {outdir!r}")
        outdir = "out"
    if not isinstance(prefix, str) or not prefix or os.sep in prefix:
        errs.append(f"output.prefix: must be a plain file name prefix, got {prefix!r}")
        prefix = command
    if out_override is not None:
        outdir = out_override
    return outdir, prefix


def _materialize(raw, command, model, ctrl, sim, energy_q, n_real, mode, initial,
                 sweep_param, sweep_values, compare_k, n_det, det_scheme,
                 outdir, prefix) -> dict:
    """Config echo with every default filled in, for the manifest."""
    model_section: dict = {"name": model.name}
    if model.name == "linear1d":
        model_section["params"] = {"L": model.params[0]}
    elif model.name == "hindmarsh_rose":
        model_section["params"] = {"eps": model.params[0]}
    elif model.name == "lorenz":
        model_section["params"] = {"sigma": model.params[0], "rho": model.params[1],
                                   "beta": model.params[2]}
    elif model.name == "may_ecosystem":
        d = model.draw
        model_section["params"] = {"N": d.N, "r": d.r, "p": d.p, "sigma": d.sigma,
                                   "matrix_seed": d.seed}
    else:
        model_section["params"] = {}
    if (raw.get("model") or {}).get("redraw_per_realization", False):
        model_section["redraw_per_realization"] = True

    out: dict = {
        "model": model_section,
        "controller": {"scheme": ctrl.scheme, "k": ctrl.k, "alpha": ctrl.alpha},
        "mode": mode,
        "energy": {"q": energy_q},
        "output": {"dir": outdir, "prefix": prefix},
    }
    if sim is not None:
        out["sim"] = {"dt": sim.dt, "t_max": sim.t_max, "eps_stop": sim.eps_stop,
                      "seed": sim.seed, "realizations": n_real}
    init_out = {}
    if initial.get("x0") is not None:
        init_out["x0"] = [float(v) for v in initial["x0"]]
    if initial.get("y0") is not None:
        init_out["y0"] = [float(v) for v in initial["y0"]]
    if init_out:
        out["initial"] = init_out
    if command == "sweep":
        out["sweep"] = {"param": sweep_param, "values": list(sweep_values)}
    if command == "compare":
        out["compare"] = {"k_values": list(compare_k), "n_deterministic": n_det,
                          "deterministic_scheme": det_scheme}
    return out


def _row_summary(row: SweepRow) -> str:
    label = f"{row.swept_name}={_fmt(row.swept_value)} " if row.swept_name else ""
    if row.ensemble is None:
        return f"{label}scheme={row.scheme} error: {row.error}"
    ens = row.ensemble
    rep = ens.bound_report
    parts = [
        f"{label}scheme={row.scheme} k={row.k:g} alpha={row.alpha:g}",
        f"hit {ens.n_hit}/{ens.n_total} (censored {ens.n_censored}, blowup {ens.n_blowup})",
    ]
    if ens.mean_tau is not None:
        parts.append(f"mean_tau={ens.mean_tau:.6g}")
    if ens.mean_energy is not None:
        parts.append(f"mean_energy={ens.mean_energy:.6g}")
    if rep is not None and rep.t_f_sup is not None:
        parts.append(f"t_f_sup={rep.t_f_sup:.6g}")
    if rep is not None and rep.e_q_sup is not None:
        parts.append(f"e_q_sup={rep.e_q_sup:.6g}")
    return "  ".join(parts)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as err:
        raise ConfigError([f"cannot read config {path}: {err}"]) from err
    except yaml.YAMLError as err:
        raise ConfigError([f"cannot parse config {path}: {err}"]) from err
    if not isinstance(raw, dict):
        raise ConfigError([f"config {path} must be a mapping at top level"])
    return raw


def _resolve_jobs(cli_jobs: int | None) -> int:
    if cli_jobs is not None:
        if cli_jobs < 1:
            raise ConfigError([f"--jobs must be >= 1, got {cli_jobs}"])
        return cli_jobs
    env = os.environ.get(ENV_JOBS)
    if env is None or env == "":
        return 1
    try:
        jobs = int(env)
    except ValueError:
        raise ConfigError([f"{ENV_JOBS} must be an integer, got {env!r}"]) from None
    if jobs < 1:
        raise ConfigError([f"{ENV_JOBS} must be >= 1, got {jobs}"])
    return jobs


def _ensure_outdir(path: str) -> None:
    os.makedirs(path, exist_ok=True)


def _write_atomic(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _write_manifest(res: ExperimentConfig) -> None:
    payload = {"command": res.command, "config": res.config}
    _write_atomic(os.path.join(res.outdir, f"{res.prefix}_manifest"),
                  json.dumps(payload, sort_keys=True, indent=2) + "\n")


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1 (config error), not argparse's default 2
    def error(self, message):
        raise ConfigError([f"usage: {message}"])


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fintime-sctl",
                     description="Finite-time stochastic feedback control experiments")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "bounds": "closed-form time and energy ceilings for one configuration",
        "simulate": "Monte Carlo stabilization ensemble",
        "sync": "Monte Carlo leader-follower ensemble",
        "sweep": "ensemble re-run over a grid of k, alpha, or N",
        "compare": "stochastic scheme versus deterministic comparator",
    }
    for name in _COMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        sp.add_argument("--config", required=True, help="YAML or JSON config (or a manifest)")
        sp.add_argument("--out", default=None, help="override output.dir")
        sp.add_argument("--seed", type=int, default=None, help="override sim.seed")
        sp.add_argument("--jobs", type=int, default=None,
                        help=f"worker thread cap (default: ${ENV_JOBS} or 1)")
        sp.add_argument("--quiet", action="store_true", help="suppress progress output")
    return parser


def _parse_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    _parse_entry()
