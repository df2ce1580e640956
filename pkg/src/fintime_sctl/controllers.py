"""Feedback laws that drive a state vector to the origin in finite time.

Two families are provided, both parametrized by a gain ``k`` and a
steepness exponent ``alpha`` in (0, 1):

* norm-based: linear ``k*x`` outside the unit ball, power-shaped
  ``k*||x||**(alpha-1) * x`` inside, continuously extended by 0 at the
  origin.  Used either as a noise intensity (stochastic scheme) or as a
  negative drift (deterministic comparator).
* componentwise: linear outside the unit ball, ``k*sign(x_i)*|x_i|**alpha``
  per component inside.  Deterministic only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STOCHASTIC_NORM = "stochastic_norm"
DETERMINISTIC_NORM = "deterministic_norm"
DETERMINISTIC_COMPONENTWISE = "deterministic_componentwise"

SCHEMES = (STOCHASTIC_NORM, DETERMINISTIC_NORM, DETERMINISTIC_COMPONENTWISE)
NORM_SCHEMES = (STOCHASTIC_NORM, DETERMINISTIC_NORM)


@dataclass(frozen=True)
class ControllerSpec:
    """Scheme name, gain, and steepness exponent of one feedback law.

    ``k == 0`` is accepted and yields the uncontrolled system; it is
    never feasible for finite-time convergence but is useful as a
    baseline in comparisons.
    """

    scheme: str
    k: float
    alpha: float

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}, expected one of {SCHEMES}")
        if not np.isfinite(self.k) or self.k < 0.0:
            raise ValueError(f"gain k must be finite and >= 0, got {self.k}")
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"steepness alpha must lie in (0, 1), got {self.alpha}")

    @property
    def is_stochastic(self) -> bool:
        return self.scheme == STOCHASTIC_NORM


def control_u(spec: ControllerSpec, x: np.ndarray) -> np.ndarray:
    """Norm-based feedback vector at state ``x``.

    Linear branch ``k*x`` for ``||x|| >= 1``, power branch
    ``k*||x||**(alpha-1)*x`` for ``0 < ||x|| < 1``, zero at the origin.
    Always radially aligned with ``x``.
    """
    if spec.scheme not in NORM_SCHEMES:
        raise ValueError(f"control_u is defined for {NORM_SCHEMES}, got {spec.scheme!r}")
    x = np.asarray(x, dtype=float)
    nrm = float(np.linalg.norm(x))
    if nrm >= 1.0:
        return spec.k * x
    if nrm == 0.0:
        return np.zeros_like(x)
    return spec.k * nrm ** (spec.alpha - 1.0) * x


def control_v(spec: ControllerSpec, x: np.ndarray) -> np.ndarray:
    """Componentwise feedback vector at state ``x``.

    Linear branch ``k*x`` for ``||x|| > 1``; inside the closed unit ball
    each component is ``k*sign(x_i)*|x_i|**alpha`` (zero components map
    to zero).  The vector may jump across the unit sphere.
    """
    if spec.scheme != DETERMINISTIC_COMPONENTWISE:
        raise ValueError(
            f"control_v is defined for {DETERMINISTIC_COMPONENTWISE!r}, got {spec.scheme!r}"
        )
    x = np.asarray(x, dtype=float)
    nrm = float(np.linalg.norm(x))
    if nrm > 1.0:
        return spec.k * x
    return spec.k * np.sign(x) * np.abs(x) ** spec.alpha


def control_norm(spec: ControllerSpec, x: np.ndarray) -> float:
    """Euclidean norm of the feedback vector, computed in closed form.

    Norm-based schemes: ``k*||x||`` outside the unit ball and
    ``k*||x||**alpha`` inside.  Componentwise scheme: ``k*||x||``
    outside, ``k*sqrt(sum(|x_i|**(2*alpha)))`` inside.
    """
    x = np.asarray(x, dtype=float)
    nrm = float(np.linalg.norm(x))
    if spec.scheme in NORM_SCHEMES:
        if nrm >= 1.0:
            return spec.k * nrm
        if nrm == 0.0:
            return 0.0
        return spec.k * nrm ** spec.alpha
    if nrm > 1.0:
        return spec.k * nrm
    return spec.k * float(np.sqrt(np.sum(np.abs(x) ** (2.0 * spec.alpha))))


def control_field(spec: ControllerSpec, x: np.ndarray) -> np.ndarray:
    """Feedback vector for ``spec`` regardless of family."""
    if spec.scheme in NORM_SCHEMES:
        return control_u(spec, x)
    return control_v(spec, x)
