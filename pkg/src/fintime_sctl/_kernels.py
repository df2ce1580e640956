"""Compiled inner loops for the Euler-Maruyama engine.

Everything here is numba-compiled and operates on plain float64 arrays.
Model drifts are dispatched on small integer codes so that one kernel
serves every model; the public modules translate specs to codes.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MODEL_LINEAR1D = 0
MODEL_NEURAL2D = 1
MODEL_MAY_ECOSYSTEM = 2
MODEL_HINDMARSH_ROSE = 3
MODEL_LORENZ = 4
MODEL_TRIG2D = 5

SCHEME_STOCHASTIC_NORM = 0
SCHEME_DETERMINISTIC_NORM = 1
SCHEME_DETERMINISTIC_COMPONENTWISE = 2

STATUS_RUNNING = 0
STATUS_HIT = 1
STATUS_CENSORED = 2
STATUS_BLOWUP = 3

BLOWUP_NORM = 1e12


@njit(cache=True, nogil=True)
def drift(code: int, par: np.ndarray, mat: np.ndarray, x: np.ndarray, out: np.ndarray) -> None:
    """Evaluate the model vector field at ``x`` into ``out``."""
    if code == MODEL_LINEAR1D:
        out[0] = par[0] * x[0]
    elif code == MODEL_NEURAL2D:
        t1 = np.tanh(x[0])
        t2 = np.tanh(2.0 * x[1])
        out[0] = -(x[0] + 2.0 * x[1]) + 3.0 * t1 + 3.0 * t2
        out[1] = -(3.0 * x[0] + 4.0 * x[1]) + t1 + 3.0 * t2
    elif code == MODEL_MAY_ECOSYSTEM:
        n = mat.shape[0]
        for i in range(n):
            s = 0.0
            for j in range(n):
                s += mat[i, j] * x[j]
            out[i] = s
    elif code == MODEL_HINDMARSH_ROSE:
        out[0] = x[1] - x[0] ** 3 + 3.0 * x[0] ** 2 - x[2] + 3.0
        out[1] = 1.0 - 5.0 * x[0] ** 2 - x[1]
        out[2] = par[0] * (4.0 * x[0] + 6.4 - x[2])
    elif code == MODEL_LORENZ:
        out[0] = par[0] * (x[1] - x[0])
        out[1] = par[1] * x[0] - x[0] * x[2] - x[1]
        out[2] = x[0] * x[1] - par[2] * x[2]
    else:
        out[0] = np.cos(x[1])
        out[1] = np.sin(x[0])


@njit(cache=True, nogil=True)
def _norm(x: np.ndarray) -> float:
    s = 0.0
    for i in range(x.shape[0]):
        s += x[i] * x[i]
    return np.sqrt(s)


@njit(cache=True, nogil=True)
def _control_into(scheme: int, k: float, alpha: float, z: np.ndarray, out: np.ndarray) -> float:
    """Fill ``out`` with the feedback vector at ``z`` and return its norm."""
    nrm = _norm(z)
    if scheme == SCHEME_DETERMINISTIC_COMPONENTWISE:
        if nrm > 1.0:
            for i in range(z.shape[0]):
                out[i] = k * z[i]
            return k * nrm
        s = 0.0
        for i in range(z.shape[0]):
            zi = z[i]
            if zi > 0.0:
                out[i] = k * zi ** alpha
            elif zi < 0.0:
                out[i] = -k * (-zi) ** alpha
            else:
                out[i] = 0.0
            s += out[i] * out[i]
        return np.sqrt(s)
    if nrm >= 1.0:
        fac = k
        un = k * nrm
    elif nrm > 0.0:
        fac = k * nrm ** (alpha - 1.0)
        un = k * nrm ** alpha
    else:
        fac = 0.0
        un = 0.0
    for i in range(z.shape[0]):
        out[i] = fac * z[i]
    return un


@njit(cache=True, nogil=True)
def run_chunk(
    sync: bool,
    model_code: int,
    par: np.ndarray,
    mat: np.ndarray,
    scheme: int,
    k: float,
    alpha: float,
    x: np.ndarray,
    y: np.ndarray,
    dw: np.ndarray,
    n_steps: int,
    dt: float,
    q: float,
    eps_stop: float,
    step0: int,
    n_max: int,
    energy0: float,
    crossings0: int,
    prev_sign0: int,
):
    """Advance one realization by at most ``n_steps`` steps.

    ``x`` is the controlled state; in sync mode ``x`` is the reference
    trajectory and ``y`` the controlled follower, and the feedback acts
    on the mismatch ``y - x``.  Arrays are updated in place.  Returns
    ``(status, steps_done, energy, crossings, prev_sign)`` where status
    is RUNNING when the chunk is exhausted, else HIT / CENSORED / BLOWUP.
    """
    dim = x.shape[0]
    fx = np.empty(dim)
    fy = np.empty(dim)
    z = np.empty(dim)
    u = np.empty(dim)
    stochastic = scheme == SCHEME_STOCHASTIC_NORM
    energy = energy0
    crossings = crossings0
    prev_sign = prev_sign0
    step = step0

    for j in range(n_steps):
        if sync:
            for i in range(dim):
                z[i] = y[i] - x[i]
        else:
            for i in range(dim):
                z[i] = x[i]
        un = _control_into(scheme, k, alpha, z, u)
        energy += un ** q * dt

        drift(model_code, par, mat, x, fx)
        if sync:
            drift(model_code, par, mat, y, fy)
            db = dw[j] if stochastic else 0.0
            for i in range(dim):
                x[i] = x[i] + fx[i] * dt
                if stochastic:
                    y[i] = y[i] + fy[i] * dt + u[i] * db
                else:
                    y[i] = y[i] + fy[i] * dt - u[i] * dt
            for i in range(dim):
                z[i] = y[i] - x[i]
            state_norm = max(_norm(x), _norm(y))
        else:
            db = dw[j] if stochastic else 0.0
            for i in range(dim):
                if stochastic:
                    x[i] = x[i] + fx[i] * dt + u[i] * db
                else:
                    x[i] = x[i] + fx[i] * dt - u[i] * dt
                z[i] = x[i]
            state_norm = _norm(x)
        step += 1

        if not np.isfinite(state_norm) or state_norm > BLOWUP_NORM:
            return STATUS_BLOWUP, step - step0, energy, crossings, prev_sign

        znorm = _norm(z)
        s_new = 0
        if znorm > 1.0:
            s_new = 1
        elif znorm < 1.0:
            s_new = -1
        if s_new != 0:
            if prev_sign != 0 and s_new != prev_sign:
                crossings += 1
            prev_sign = s_new

        if znorm <= eps_stop:
            return STATUS_HIT, step - step0, energy, crossings, prev_sign
        if step >= n_max:
            return STATUS_CENSORED, step - step0, energy, crossings, prev_sign

    return STATUS_RUNNING, n_steps, energy, crossings, prev_sign
