"""Finite-time stochastic feedback control of ODE systems.

Simulate controlled dynamics driven by a single Brownian motion, measure
capture times and control energy by Monte Carlo, and put the results
next to closed-form feasibility conditions and expectation ceilings.
"""

from .bounds import (
    BoundReport,
    InadmissibleOrderError,
    InfeasibleGainError,
    InitialLaw,
    UndefinedBoundError,
    alpha_threshold,
    bound_report,
    e_q_sup,
    feasibility,
    h2,
    min_h2,
    oracle_min_h2,
    p_star,
    q_admissible,
    t_f_sup,
)
from .controllers import (
    DETERMINISTIC_COMPONENTWISE,
    DETERMINISTIC_NORM,
    SCHEMES,
    STOCHASTIC_NORM,
    ControllerSpec,
    control_field,
    control_norm,
    control_u,
    control_v,
)
from .engine import (
    BLOWUP_NORM,
    BlowupError,
    RunOutcome,
    SimConfig,
    em_step,
    gaussian_increments,
    simulate_stabilization,
    simulate_synchronization,
)
from .experiments import (
    EnsembleResult,
    Experiment,
    SweepRow,
    compare_schemes,
    run_ensemble,
    sweep,
)
from .models import (
    MODEL_NAMES,
    ModelSpec,
    RandomEcosystemDraw,
    draw_ecosystem,
    eval_f,
    g_diagnostic,
    hindmarsh_rose,
    linear1d,
    lipschitz_L,
    load_ecosystem,
    lorenz,
    may_ecosystem,
    neural2d,
    save_ecosystem,
    trig2d,
)

__version__ = "0.1.0"

__all__ = [
    "BLOWUP_NORM",
    "BlowupError",
    "BoundReport",
    "ControllerSpec",
    "DETERMINISTIC_COMPONENTWISE",
    "DETERMINISTIC_NORM",
    "EnsembleResult",
    "Experiment",
    "InadmissibleOrderError",
    "InfeasibleGainError",
    "InitialLaw",
    "MODEL_NAMES",
    "ModelSpec",
    "RandomEcosystemDraw",
    "RunOutcome",
    "SCHEMES",
    "STOCHASTIC_NORM",
    "SimConfig",
    "SweepRow",
    "UndefinedBoundError",
    "alpha_threshold",
    "bound_report",
    "compare_schemes",
    "control_field",
    "control_norm",
    "control_u",
    "control_v",
    "draw_ecosystem",
    "e_q_sup",
    "em_step",
    "eval_f",
    "feasibility",
    "g_diagnostic",
    "gaussian_increments",
    "h2",
    "hindmarsh_rose",
    "linear1d",
    "lipschitz_L",
    "load_ecosystem",
    "lorenz",
    "may_ecosystem",
    "min_h2",
    "neural2d",
    "oracle_min_h2",
    "p_star",
    "q_admissible",
    "run_ensemble",
    "save_ecosystem",
    "simulate_stabilization",
    "simulate_synchronization",
    "sweep",
    "t_f_sup",
    "trig2d",
]
