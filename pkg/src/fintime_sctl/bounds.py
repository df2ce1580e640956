"""Closed-form ceilings on capture time and control energy.

For a drift whose one-sided growth constant is ``L`` and the norm-based
feedback with gain ``k`` and steepness ``alpha``, the stochastic scheme
admits explicit upper bounds on the expected time to reach the capture
radius and on the expected control energy of order ``q``.  Both rest on
the auxiliary polynomial ``h2(p) = p*L + p*(p-1)*k**2/2``, whose minimum
over an exponent interval governs the behavior inside the unit ball.

Feasibility is ``k > sqrt(2*L)`` for the stochastic scheme and ``k > L``
for the deterministic comparators; energy bounds additionally need the
order ``q`` below both ``2 - 2*alpha`` and ``1 - 2*L/k**2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .controllers import SCHEMES, STOCHASTIC_NORM

CASE_BELOW_THRESHOLD = "below_threshold"
CASE_AT_OR_ABOVE_THRESHOLD = "at_or_above_threshold"


class UndefinedBoundError(ValueError):
    """The requested bound does not exist for these parameters."""


class InfeasibleGainError(UndefinedBoundError):
    """Gain too small for the scheme's finite-time feasibility condition."""


class InadmissibleOrderError(UndefinedBoundError):
    """Energy order outside the admissible interval."""


@dataclass(frozen=True, eq=False)
class InitialLaw:
    """Initial condition as a finite equal-weight set of state points.

    A single point models a deterministic start; several points model an
    empirical distribution.  All bound formulas consume only norm
    moments of this law.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError(f"points must be a (m, dim) array with m >= 1, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("initial points must be finite")
        object.__setattr__(self, "points", pts)

    @classmethod
    def point(cls, x0: np.ndarray) -> "InitialLaw":
        return cls(np.asarray(x0, dtype=float).reshape(1, -1))

    @classmethod
    def sample(cls, points: np.ndarray) -> "InitialLaw":
        return cls(np.asarray(points, dtype=float))

    @property
    def kind(self) -> str:
        return "point" if self.points.shape[0] == 1 else "sample"

    def _norms(self) -> np.ndarray:
        return np.linalg.norm(self.points, axis=1)

    def prob_outside(self) -> float:
        """Mass strictly outside the unit ball."""
        return float(np.mean(self._norms() > 1.0))

    def mean_log_outside(self) -> float:
        """Mean of ``log||x||`` restricted to the mass outside the unit ball."""
        n = self._norms()
        return float(np.mean(np.where(n > 1.0, np.log(np.where(n > 1.0, n, 1.0)), 0.0)))

    def mean_pow_inside(self, expo: float) -> float:
        """Mean of ``||x||**expo`` restricted to the mass inside the closed unit ball."""
        n = self._norms()
        return float(np.mean(np.where(n <= 1.0, n ** expo, 0.0)))

    def mean_pow(self, expo: float) -> float:
        """Mean of ``||x||**expo`` over the whole law."""
        return float(np.mean(self._norms() ** expo))


def h2(p, L: float, k: float):
    """Auxiliary polynomial ``p*L + p*(p-1)*k**2/2``; accepts array ``p``."""
    p = np.asarray(p, dtype=float)
    val = p * L + 0.5 * p * (p - 1.0) * k * k
    return float(val) if val.ndim == 0 else val


def p_star(L: float, k: float) -> float:
    """Unconstrained minimizer of :func:`h2`, equal to ``1/2 - L/k**2``."""
    if k <= 0.0:
        raise ValueError(f"gain k must be > 0, got {k}")
    return 0.5 - L / (k * k)


def alpha_threshold(L: float, k: float) -> float:
    """Steepness value ``3/4 + L/(2*k**2)`` separating the two bound regimes."""
    if k <= 0.0:
        raise ValueError(f"gain k must be > 0, got {k}")
    return 0.75 + L / (2.0 * k * k)


def feasibility(L: float, k: float, scheme: str = STOCHASTIC_NORM) -> bool:
    """Whether gain ``k`` meets the scheme's finite-time condition for ``L``."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")
    if k <= 0.0:
        return False
    if scheme == STOCHASTIC_NORM:
        return k * k > 2.0 * L
    return k > L


def min_h2(L: float, k: float, alpha: float) -> tuple[float, float]:
    """Closed-form minimum of :func:`h2` over ``(0, min(1, 2 - 2*alpha)]``.

    Returns ``(p_at_min, value)``.  The minimum sits at the unconstrained
    minimizer when that lies inside the interval, else at the right edge.
    """
    _check_alpha(alpha)
    if not feasibility(L, k, STOCHASTIC_NORM):
        raise InfeasibleGainError(_infeasible_msg(L, k))
    cap = min(1.0, 2.0 - 2.0 * alpha)
    ps = p_star(L, k)
    if ps < cap:
        return ps, -0.5 * (k * ps) ** 2
    return cap, h2(cap, L, k)


def oracle_min_h2(L: float, k: float, alpha: float, grid_points: int = 1_000_000) -> tuple[float, float]:
    """Brute-force grid minimum of :func:`h2` over ``(0, min(1, 2 - 2*alpha)]``.

    Slow reference implementation used to cross-check :func:`min_h2`.
    """
    _check_alpha(alpha)
    cap = min(1.0, 2.0 - 2.0 * alpha)
    grid = np.linspace(cap / grid_points, cap, grid_points)
    vals = h2(grid, L, k)
    i = int(np.argmin(vals))
    return float(grid[i]), float(vals[i])


def t_f_sup(L: float, k: float, alpha: float, law: InitialLaw) -> float:
    """Ceiling on the expected capture time under the stochastic scheme.

    Averages over both the noise and the initial law.  Raises
    :class:`InfeasibleGainError` when ``k <= sqrt(2*L)``.
    """
    _check_alpha(alpha)
    if not feasibility(L, k, STOCHASTIC_NORM):
        raise InfeasibleGainError(_infeasible_msg(L, k))
    outside = 2.0 * law.mean_log_outside() / (k * k - 2.0 * L)
    p_choice, h2_min = min_h2(L, k, alpha)
    inside = -(law.prob_outside() + law.mean_pow_inside(p_choice)) / h2_min
    return outside + inside


def q_admissible(L: float, k: float, alpha: float, q: float) -> bool:
    """Whether the energy order ``q`` is inside the admissible interval."""
    return not _q_violations(L, k, alpha, q)


def e_q_sup(L: float, k: float, alpha: float, q: float, law: InitialLaw) -> float:
    """Ceiling on the expected control energy of order ``q``, stochastic scheme.

    Raises :class:`InfeasibleGainError` for infeasible gain and
    :class:`InadmissibleOrderError` (naming the violated cap) for ``q``
    outside ``(0, min(2 - 2*alpha, 1 - 2*L/k**2))``.
    """
    _check_alpha(alpha)
    if not feasibility(L, k, STOCHASTIC_NORM):
        raise InfeasibleGainError(_infeasible_msg(L, k))
    violations = _q_violations(L, k, alpha, q)
    if violations:
        raise InadmissibleOrderError("; ".join(violations))
    h2_q = h2(q, L, k)
    mass = law.mean_pow(q) + 2.0 * law.prob_outside() + law.mean_pow_inside(q)
    return -(k ** q) / h2_q * mass


@dataclass(frozen=True)
class BoundReport:
    """Everything the bounds say about one (model constant, controller, q) triple.

    ``t_f_sup`` and ``e_q_sup`` are populated only for the stochastic
    scheme when defined; deterministic schemes report feasibility of
    ``k > L`` and leave the ceilings empty.
    """

    scheme: str
    L: float
    k: float
    alpha: float
    q: float
    feasible: bool
    p_star: float
    alpha_case: str | None
    h2_at_choice: float | None
    t_f_sup: float | None
    q_admissible: bool
    h2_q: float
    e_q_sup: float | None


def bound_report(L: float, k: float, alpha: float, q: float, law: InitialLaw,
                 scheme: str = STOCHASTIC_NORM) -> BoundReport:
    """Assemble the full report; never raises for infeasible inputs."""
    _check_alpha(alpha)
    if k <= 0.0:
        raise ValueError(f"gain k must be > 0 for a bound report, got {k}")
    feasible = feasibility(L, k, scheme)
    ps = p_star(L, k)
    h2_q = h2(q, L, k)
    adm = q_admissible(L, k, alpha, q)

    alpha_case = None
    h2_at_choice = None
    t_bound = None
    e_bound = None
    if scheme == STOCHASTIC_NORM and feasible:
        p_choice, h2_min = min_h2(L, k, alpha)
        cap = min(1.0, 2.0 - 2.0 * alpha)
        alpha_case = CASE_BELOW_THRESHOLD if ps < cap else CASE_AT_OR_ABOVE_THRESHOLD
        h2_at_choice = h2_min
        t_bound = t_f_sup(L, k, alpha, law)
        if adm:
            e_bound = e_q_sup(L, k, alpha, q, law)
    return BoundReport(
        scheme=scheme,
        L=L,
        k=k,
        alpha=alpha,
        q=q,
        feasible=feasible,
        p_star=ps,
        alpha_case=alpha_case,
        h2_at_choice=h2_at_choice,
        t_f_sup=t_bound,
        q_admissible=adm,
        h2_q=h2_q,
        e_q_sup=e_bound,
    )


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"steepness alpha must lie in (0, 1), got {alpha}")


def _infeasible_msg(L: float, k: float) -> str:
    need = np.sqrt(2.0 * L) if L > 0.0 else 0.0
    return f"gain k={k} is not feasible for L={L}: stochastic scheme needs k > {need}"


def _q_violations(L: float, k: float, alpha: float, q: float) -> list[str]:
    out = []
    if not q > 0.0:
        out.append(f"energy order q must be > 0, got {q}")
    cap_alpha = 2.0 - 2.0 * alpha
    if not q < cap_alpha:
        out.append(f"energy order q={q} must be below the steepness cap 2 - 2*alpha = {cap_alpha}")
    cap_noise = 1.0 - 2.0 * L / (k * k)
    if not q < cap_noise:
        out.append(f"energy order q={q} must be below the noise-margin cap 1 - 2*L/k**2 = {cap_noise}")
    return out
