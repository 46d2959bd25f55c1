"""Optimal two-layer knowledge hierarchies under four AI deployment
architectures: closed-form solvers, independent numeric oracles, Monte Carlo
validation, comparative-statics sweeps, and figure-dataset reproduction."""

__version__ = "0.1.0"

from .params import (
    ADOPTION_TIE_TOL,
    AdoptionDecision,
    DeploymentConfig,
    DomainError,
    FeasibilityError,
    Mode,
    ModelParams,
    OrgDesign,
    SolveResult,
    ThresholdBundle,
    validate_params,
)
from .closed_form import (
    baseline_solve,
    expert_aug_solve,
    expert_auto_solve,
    lower_bound,
    profit_eval,
    solve,
    worker_aug_solve,
    worker_auto_solve,
)
from .extensions import (
    CoefficientTooSmall,
    ConvergenceError,
    CouplingConfig,
    InvestmentCosts,
    InvestmentDesign,
    ProductivityConfig,
    capability_invest_solve,
    coupled_solve,
    dual_invest_solve,
    expert_knowledge_solve,
    productivity_solve,
)
from .oracle import (
    InfeasibleError,
    ScalarProblem,
    VerificationReport,
    feasible_sampler,
    maximize_pair,
    maximize_scalar,
    verify_mode,
)
from .simulate import Moment, SimConfig, SimReport, analytic_coefficients, run_simulation
from .sweep import SweepRow, SweepSpec, run_sweep, sweep_csv
from .figures import FigureSpec, catalog, figure_csv, figure_ids

__all__ = [
    "ADOPTION_TIE_TOL",
    "AdoptionDecision",
    "CoefficientTooSmall",
    "ConvergenceError",
    "CouplingConfig",
    "DeploymentConfig",
    "DomainError",
    "FeasibilityError",
    "FigureSpec",
    "InfeasibleError",
    "InvestmentCosts",
    "InvestmentDesign",
    "Mode",
    "ModelParams",
    "Moment",
    "OrgDesign",
    "ProductivityConfig",
    "ScalarProblem",
    "SimConfig",
    "SimReport",
    "SolveResult",
    "SweepRow",
    "SweepSpec",
    "ThresholdBundle",
    "VerificationReport",
    "analytic_coefficients",
    "baseline_solve",
    "capability_invest_solve",
    "catalog",
    "coupled_solve",
    "dual_invest_solve",
    "expert_aug_solve",
    "expert_auto_solve",
    "expert_knowledge_solve",
    "feasible_sampler",
    "figure_csv",
    "figure_ids",
    "lower_bound",
    "maximize_pair",
    "maximize_scalar",
    "productivity_solve",
    "profit_eval",
    "run_simulation",
    "run_sweep",
    "solve",
    "sweep_csv",
    "validate_params",
    "verify_mode",
    "worker_aug_solve",
    "worker_auto_solve",
]
