"""Benchmark vector fields and their one-sided growth constants.

Each model is a drift ``f`` with (when known) a constant ``L`` such that
``<x, f(x)> <= L*||x||**2`` on the region of interest; that constant is
what the feasibility conditions and closed-form bounds consume.  For
models used in leader-follower experiments the same inequality is
required of the mismatch dynamics ``f(x+z) - f(x)``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

MODEL_NAMES = (
    "linear1d",
    "neural2d",
    "may_ecosystem",
    "hindmarsh_rose",
    "lorenz",
    "trig2d",
)

_CODES = {
    "linear1d": _kernels.MODEL_LINEAR1D,
    "neural2d": _kernels.MODEL_NEURAL2D,
    "may_ecosystem": _kernels.MODEL_MAY_ECOSYSTEM,
    "hindmarsh_rose": _kernels.MODEL_HINDMARSH_ROSE,
    "lorenz": _kernels.MODEL_LORENZ,
    "trig2d": _kernels.MODEL_TRIG2D,
}

_EMPTY_MAT = np.zeros((0, 0))


@dataclass(frozen=True, eq=False)
class RandomEcosystemDraw:
    """One realization of a sparse random interaction matrix.

    Diagonal entries are ``-r``; each off-diagonal entry is nonzero with
    probability ``p`` and then drawn N(0, sigma**2).  ``eta_max_*`` are
    the top eigenvalue of the symmetrized matrix: the asymptotic
    semicircle-law estimate ``-r + sqrt(2*N*p)*sigma`` and the exact
    value for this draw.
    """

    C: np.ndarray
    r: float
    p: float
    sigma: float
    seed: int
    eta_max_semicircle: float
    eta_max_empirical: float

    @property
    def N(self) -> int:
        return self.C.shape[0]


def draw_ecosystem(N: int, r: float, p: float, sigma: float, seed: int) -> RandomEcosystemDraw:
    """Draw an interaction matrix; pure function of all five arguments."""
    if N < 1:
        raise ValueError(f"N must be a positive integer, got {N}")
    if not (0.0 < p <= 1.0):
        raise ValueError(f"connection probability p must lie in (0, 1], got {p}")
    if sigma <= 0.0:
        raise ValueError(f"interaction scale sigma must be > 0, got {sigma}")
    rng = np.random.default_rng(seed)
    vals = rng.normal(0.0, sigma, size=(N, N))
    mask = rng.random(size=(N, N)) < p
    C = np.where(mask, vals, 0.0)
    np.fill_diagonal(C, -r)
    return RandomEcosystemDraw(
        C=C,
        r=float(r),
        p=float(p),
        sigma=float(sigma),
        seed=int(seed),
        eta_max_semicircle=float(-r + np.sqrt(2.0 * N * p) * sigma),
        eta_max_empirical=float(np.linalg.eigvalsh(0.5 * (C + C.T))[-1]),
    )


def save_ecosystem(draw: RandomEcosystemDraw, path: str) -> None:
    """Write a draw as text: header ``N r p sigma seed`` then the matrix.

    The matrix follows row-major, one row per line, whitespace separated,
    with shortest round-trip float formatting.
    """
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{draw.N} {float(draw.r)!r} {float(draw.p)!r} {float(draw.sigma)!r} {draw.seed}\n")
        for row in draw.C:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def load_ecosystem(path: str) -> RandomEcosystemDraw:
    """Read a draw written by :func:`save_ecosystem`; eigenvalues are recomputed."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 5:
            raise ValueError(f"malformed ecosystem header in {path}: expected 5 fields")
        N = int(header[0])
        r, p, sigma = (float(v) for v in header[1:4])
        seed = int(header[4])
        C = np.loadtxt(io.StringIO(fh.read()), ndmin=2)
    if C.shape != (N, N):
        raise ValueError(f"ecosystem matrix in {path} has shape {C.shape}, expected ({N}, {N})")
    return RandomEcosystemDraw(
        C=C,
        r=r,
        p=p,
        sigma=sigma,
        seed=seed,
        eta_max_semicircle=float(-r + np.sqrt(2.0 * N * p) * sigma),
        eta_max_empirical=float(np.linalg.eigvalsh(0.5 * (C + C.T))[-1]),
    )


@dataclass(frozen=True, eq=False)
class ModelSpec:
    """A named drift with fixed parameters and state dimension."""

    name: str
    dim: int
    params: tuple[float, ...] = ()
    matrix: np.ndarray | None = None
    draw: RandomEcosystemDraw | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.name not in MODEL_NAMES:
            raise ValueError(f"unknown model {self.name!r}, expected one of {MODEL_NAMES}")

    def packed(self) -> tuple[int, np.ndarray, np.ndarray]:
        """Integer code, parameter array, and matrix for the compiled kernels."""
        par = np.asarray(self.params, dtype=float)
        mat = self.matrix if self.matrix is not None else _EMPTY_MAT
        return _CODES[self.name], par, mat


def linear1d(L: float = 2.0) -> ModelSpec:
    """Scalar drift ``f(x) = L*x``; exponentially unstable for L > 0."""
    return ModelSpec(name="linear1d", dim=1, params=(float(L),))


def neural2d() -> ModelSpec:
    """Planar recurrent network ``f(x) = -C*x + A*[tanh(x1), tanh(2*x2)]``.

    Fixed weights C = [[1, 2], [3, 4]], A = [[3, 3], [1, 3]].  The origin
    is an equilibrium and the one-sided growth constant is 8.
    """
    return ModelSpec(name="neural2d", dim=2)


def may_ecosystem(draw: RandomEcosystemDraw) -> ModelSpec:
    """Linear community dynamics ``f(x) = C*x`` around an extinction point."""
    return ModelSpec(name="may_ecosystem", dim=draw.N, matrix=draw.C, draw=draw)


def hindmarsh_rose(eps: float = 0.005) -> ModelSpec:
    """Three-variable bursting neuron; no one-sided growth constant is supplied."""
    return ModelSpec(name="hindmarsh_rose", dim=3, params=(float(eps),))


def lorenz(sigma: float = 6.0, rho: float = 10.0, beta: float = 3.0) -> ModelSpec:
    """Lorenz flow; one-sided growth constant ``(sigma + rho) / 2``."""
    return ModelSpec(name="lorenz", dim=3, params=(float(sigma), float(rho), float(beta)))


def trig2d() -> ModelSpec:
    """Planar drift ``f(x) = [cos(x2), sin(x1)]``, globally bounded.

    Its mismatch dynamics are 1-Lipschitz, so L = 1 for leader-follower use.
    """
    return ModelSpec(name="trig2d", dim=2)


def eval_f(model: ModelSpec, x: np.ndarray) -> np.ndarray:
    """Vector field of ``model`` at state ``x``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (model.dim,):
        raise ValueError(f"state shape {x.shape} does not match model dim {model.dim}")
    code, par, mat = model.packed()
    out = np.empty(model.dim)
    _kernels.drift(code, par, mat, x, out)
    return out


def lipschitz_L(model: ModelSpec) -> float | None:
    """One-sided growth constant for the bounds, or None when unavailable."""
    if model.name == "linear1d":
        return model.params[0]
    if model.name == "neural2d":
        # certified numerically by the inner-product sampling test
        return 8.0
    if model.name == "may_ecosystem":
        return model.draw.eta_max_empirical
    if model.name == "lorenz":
        sigma, rho, _beta = model.params
        return 0.5 * (sigma + rho)
    if model.name == "trig2d":
        return 1.0
    return None


def g_diagnostic(model: ModelSpec, x: np.ndarray) -> float:
    """Inner product ``<x, f(x)>``, the quantity the growth constant caps."""
    x = np.asarray(x, dtype=float)
    return float(np.dot(x, eval_f(model, x)))
