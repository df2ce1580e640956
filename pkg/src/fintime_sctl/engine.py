"""Euler-Maruyama integration of controlled systems driven by one Brownian motion.

A realization advances by ``x <- x + f(x)*dt + u(x)*dB`` where ``dB`` is a
single scalar increment shared by every component (deterministic schemes
replace ``u*dB`` with ``-u*dt``).  Integration stops the first time the
controlled vector enters the ball of radius ``eps_stop`` (a hit), when
simulated time reaches ``t_max`` (censored), or when the state norm
exceeds 1e12 or turns non-finite (blowup).  Along the way the run
accumulates the control-energy functional ``sum ||u||**q * dt`` with
left-endpoint quadrature and counts crossings of the unit sphere.

Noise increments for realization ``i`` of seed ``s`` form a fixed stream,
a pure function of ``(s, i)``; ensemble composition, chunking, and
scheduling cannot change any realization's outcome.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .controllers import (
    DETERMINISTIC_COMPONENTWISE,
    DETERMINISTIC_NORM,
    STOCHASTIC_NORM,
    ControllerSpec,
)
from .models import ModelSpec

BLOWUP_NORM = _kernels.BLOWUP_NORM

_CHUNK = 1 << 16
_EMPTY = np.empty(0)

_SCHEME_CODES = {
    STOCHASTIC_NORM: _kernels.SCHEME_STOCHASTIC_NORM,
    DETERMINISTIC_NORM: _kernels.SCHEME_DETERMINISTIC_NORM,
    DETERMINISTIC_COMPONENTWISE: _kernels.SCHEME_DETERMINISTIC_COMPONENTWISE,
}


class BlowupError(RuntimeError):
    """Raised by :func:`em_step` when an update produces a non-finite state."""

    def __init__(self, step_index: int):
        super().__init__(f"integration blew up at step {step_index}")
        self.step_index = step_index


@dataclass(frozen=True)
class SimConfig:
    """Numerical parameters of one realization.

    ``eps_stop`` is the capture radius that defines a hit, ``q`` the
    exponent of the control-energy functional, and ``(seed,
    realization_index)`` select the noise stream.
    """

    dt: float
    t_max: float
    eps_stop: float = 1e-4
    q: float = 0.5
    seed: int = 0
    realization_index: int = 0

    def __post_init__(self) -> None:
        problems = []
        if not (np.isfinite(self.dt) and self.dt > 0.0):
            problems.append(f"dt must be finite and > 0, got {self.dt}")
        if not (np.isfinite(self.t_max) and self.t_max > 0.0):
            problems.append(f"t_max must be finite and > 0, got {self.t_max}")
        if not problems and not self.dt < self.t_max:
            problems.append(f"dt must be smaller than t_max, got dt={self.dt} t_max={self.t_max}")
        if not (0.0 < self.eps_stop < 1.0):
            problems.append(f"eps_stop must lie in (0, 1), got {self.eps_stop}")
        if not (np.isfinite(self.q) and self.q > 0.0):
            problems.append(f"energy order q must be > 0, got {self.q}")
        if int(self.seed) != self.seed or self.seed < 0:
            problems.append(f"seed must be a non-negative integer, got {self.seed}")
        if int(self.realization_index) != self.realization_index or self.realization_index < 0:
            problems.append(f"realization_index must be a non-negative integer, got {self.realization_index}")
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def n_max(self) -> int:
        """Number of steps to the censoring horizon."""
        return int(math.ceil(self.t_max / self.dt - 1e-9))


@dataclass(frozen=True, eq=False)
class RunOutcome:
    """What one realization did.

    Exactly one of ``hit``, ``censored``, ``blowup`` is true.  ``tau`` is
    the hitting time (steps times dt) and is NaN unless ``hit``;
    ``energy_q`` accumulates up to the stopping step regardless of how
    the run ended.  ``final_state`` is the controlled vector at the stop:
    the state itself, or the follower mismatch in sync mode.
    """

    hit: bool
    tau: float
    energy_q: float
    ball_crossings: int
    censored: bool
    blowup: bool
    steps: int
    final_state: np.ndarray


def gaussian_increments(seed: int, realization_index: int, count: int, dt: float) -> np.ndarray:
    """The first ``count`` Brownian increments of one realization's stream.

    Increments are N(0, dt) and the stream is a pure function of
    ``(seed, realization_index)``; successive calls with growing counts
    return consistent prefixes.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    gen = _increment_generator(seed, realization_index)
    return gen.normal(0.0, math.sqrt(dt), count)


def em_step(x: np.ndarray, f_val: np.ndarray, u_val: np.ndarray, dt: float, db: float,
            step_index: int = 0) -> np.ndarray:
    """One Euler-Maruyama update ``x + f*dt + u*db`` with a scalar ``db``."""
    x_new = np.asarray(x, dtype=float) + np.asarray(f_val, dtype=float) * dt \
        + np.asarray(u_val, dtype=float) * db
    if not np.all(np.isfinite(x_new)):
        raise BlowupError(step_index)
    return x_new


def simulate_stabilization(model: ModelSpec, ctrl: ControllerSpec, x0: np.ndarray,
                           cfg: SimConfig) -> RunOutcome:
    """Drive ``model`` from ``x0`` toward the origin under ``ctrl``."""
    x0 = _check_state(model, x0, "x0")
    return _run(model, ctrl, x0, None, cfg)


def simulate_synchronization(model: ModelSpec, ctrl: ControllerSpec, x0: np.ndarray,
                             y0: np.ndarray, cfg: SimConfig) -> RunOutcome:
    """Couple a follower started at ``y0`` to a reference started at ``x0``.

    Both trajectories obey the model drift; the feedback, acting on the
    mismatch, enters only the follower.  Hit, energy, and crossings are
    all measured on the mismatch vector.
    """
    x0 = _check_state(model, x0, "x0")
    y0 = _check_state(model, y0, "y0")
    return _run(model, ctrl, x0, y0, cfg)


def _increment_generator(seed: int, realization_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence([int(seed), int(realization_index)])
    return np.random.Generator(np.random.PCG64(ss))


def _check_state(model: ModelSpec, x: np.ndarray, label: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (model.dim,):
        raise ValueError(f"{label} shape {x.shape} does not match model dim {model.dim}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{label} must be finite, got {x}")
    return x.copy()


def _run(model: ModelSpec, ctrl: ControllerSpec, x0: np.ndarray, y0: np.ndarray | None,
         cfg: SimConfig) -> RunOutcome:
    sync = y0 is not None
    code, par, mat = model.packed()
    scheme_code = _SCHEME_CODES[ctrl.scheme]
    stochastic = ctrl.is_stochastic

    x = x0.copy()
    y = y0.copy() if sync else np.zeros_like(x)
    z0 = y - x if sync else x
    z0_norm = float(np.linalg.norm(z0))
    if z0_norm <= cfg.eps_stop:
        return RunOutcome(hit=True, tau=0.0, energy_q=0.0, ball_crossings=0,
                          censored=False, blowup=False, steps=0, final_state=z0.copy())

    prev_sign = 1 if z0_norm > 1.0 else (-1 if z0_norm < 1.0 else 0)
    n_max = cfg.n_max
    sqrt_dt = math.sqrt(cfg.dt)
    gen = _increment_generator(cfg.seed, cfg.realization_index) if stochastic else None

    steps = 0
    energy = 0.0
    crossings = 0
    status = _kernels.STATUS_CENSORED
    while steps < n_max:
        todo = min(_CHUNK, n_max - steps)
        dw = gen.normal(0.0, sqrt_dt, todo) if stochastic else _EMPTY
        status, done, energy, crossings, prev_sign = _kernels.run_chunk(
            sync, code, par, mat, scheme_code, ctrl.k, ctrl.alpha,
            x, y, dw, todo, cfg.dt, cfg.q, cfg.eps_stop,
            steps, n_max, energy, crossings, prev_sign,
        )
        steps += done
        if status != _kernels.STATUS_RUNNING:
            break

    hit = status == _kernels.STATUS_HIT
    final = y - x if sync else x
    return RunOutcome(
        hit=hit,
        tau=steps * cfg.dt if hit else float("nan"),
        energy_q=energy,
        ball_crossings=crossings,
        censored=status == _kernels.STATUS_CENSORED,
        blowup=status == _kernels.STATUS_BLOWUP,
        steps=steps,
        final_state=final,
    )
