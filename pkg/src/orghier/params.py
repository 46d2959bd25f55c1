"""Domain types and parameter validation for two-layer knowledge hierarchies.

A firm employs entry-level workers (knowledge level ``x``) and senior experts
(knowledge level ``y``, normally 1).  Tasks of uniform-random difficulty are
solved by workers up to their knowledge level and escalated to experts beyond
it.  AI can be deployed in one of four architectures, indexed by where it sits
(worker or expert layer) and how it acts (automation or augmentation).  Every
value in this module is an immutable record, safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

ADOPTION_TIE_TOL = 1e-12
"""Profit-gap tolerance for adoption decisions; exact ties resolve to no-adoption."""


class Mode(str, Enum):
    """Deployment architecture (plus the no-AI baseline)."""

    BASELINE = "baseline"
    WORKER_AUTO = "worker-auto"
    WORKER_AUG = "worker-aug"
    EXPERT_AUTO = "expert-auto"
    EXPERT_AUG = "expert-aug"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        for m in cls:
            if m.value == text:
                return m
        raise FeasibilityError(
            f"unknown mode {text!r}; expected one of "
            + ", ".join(m.value for m in cls)
        )


#: Modes whose routing reads the validation time t_v.
MODES_USING_TV = frozenset({Mode.WORKER_AUTO, Mode.WORKER_AUG, Mode.EXPERT_AUTO})
#: Modes whose routing reads the rework time t_r.
MODES_USING_TR = frozenset({Mode.WORKER_AUTO})


class FeasibilityError(ValueError):
    """A parameter violates a model assumption.  The message names the
    violated inequality and echoes the offending values."""


class DomainError(ValueError):
    """An evaluation point lies outside the operation's feasible interval."""


@dataclass(frozen=True)
class ModelParams:
    """Economy primitives.

    Attributes:
        k: knowledge premium, coefficient of the convex wage term k*x^2/2 (> 0).
        w: market price of one unit of work time (> 0).
        t_c: expert time consumed per worker consultation.
        t_v: human time to validate one AI-processed task (modes that
            validate; ignored otherwise).
        t_r: worker time to redo a task after a detected hallucination
            (worker-level automation only; ignored otherwise).
    """

    k: float
    w: float
    t_c: float
    t_v: float | None = None
    t_r: float | None = None

    @property
    def tc_max(self) -> float:
        """Upper bound on the communication cost, 2k/(k+2w).  At or above it
        the firm would rather hire a fully knowledgeable worker than keep an
        expert layer."""
        return 2.0 * self.k / (self.k + 2.0 * self.w)

    @property
    def worker_wage_coeff(self) -> float:
        """k + 2w, the combination that prices worker knowledge decisions."""
        return self.k + 2.0 * self.w

    def expert_wage(self, y: float = 1.0) -> float:
        return self.w + 0.5 * self.k * y * y

    def worker_wage(self, x: float) -> float:
        return self.w + 0.5 * self.k * x * x


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise FeasibilityError(message)


def _num(value: object) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def validate_params(params: ModelParams, mode: Mode) -> ModelParams:
    """Check every model assumption the given mode relies on.

    Returns the identical record when all assumptions hold, so validation is
    idempotent.  Raises FeasibilityError naming exactly one violated
    inequality otherwise.  t_v/t_r are only validated for modes that read
    them, so one record can drive a cross-mode sweep.
    """
    k, w, t_c = params.k, params.w, params.t_c
    _require(k > 0.0, f"k > 0 violated: k = {_num(k)}")
    _require(w > 0.0, f"w > 0 violated: w = {_num(w)}")
    _require(t_c > 0.0, f"t_c > 0 violated: t_c = {_num(t_c)}")
    _require(
        t_c < params.tc_max,
        f"t_c < 2k/(k+2w) violated: t_c = {_num(t_c)}, bound = {_num(params.tc_max)}",
    )
    if mode in MODES_USING_TV:
        _require(
            params.t_v is not None,
            f"t_v required for mode {mode.value} but missing",
        )
        assert params.t_v is not None
        _require(0.0 < params.t_v, f"t_v > 0 violated: t_v = {_num(params.t_v)}")
        _require(params.t_v < 1.0, f"t_v < 1 violated: t_v = {_num(params.t_v)}")
    if mode in MODES_USING_TR:
        _require(
            params.t_r is not None,
            f"t_r required for mode {mode.value} but missing",
        )
        assert params.t_v is not None and params.t_r is not None
        _require(0.0 < params.t_r, f"t_r > 0 violated: t_r = {_num(params.t_r)}")
        _require(params.t_r < 1.0, f"t_r < 1 violated: t_r = {_num(params.t_r)}")
        _require(
            params.t_v + params.t_r > 1.0,
            f"t_v + t_r > 1 violated: t_v + t_r = {_num(params.t_v + params.t_r)}",
        )
    return params


def check_unit_open(name: str, value: float) -> float:
    """Require value in the open interval (0, 1); capability and hallucination
    rates of exactly 0 or 1 are rejected."""
    _require(0.0 < value < 1.0, f"0 < {name} < 1 violated: {name} = {_num(value)}")
    return value


@dataclass(frozen=True)
class DeploymentConfig:
    """Which architecture is active plus its capability and hallucination rate.

    Baseline carries neither r nor h.  For the active mode, r is the
    capability (automation scope or augmentation strength) and h the
    probability an AI-processed task is confidently wrong.
    """

    mode: Mode
    r: float | None = None
    h: float | None = None

    def validated(self) -> "DeploymentConfig":
        if self.mode is Mode.BASELINE:
            _require(self.r is None, f"baseline carries no capability: r = {self.r}")
            _require(self.h is None, f"baseline carries no hallucination rate: h = {self.h}")
            return self
        _require(self.r is not None, f"mode {self.mode.value} requires a capability r")
        _require(self.h is not None, f"mode {self.mode.value} requires a hallucination rate h")
        assert self.r is not None and self.h is not None
        check_unit_open("r", self.r)
        check_unit_open("h", self.h)
        return self


@dataclass(frozen=True)
class OrgDesign:
    """One organizational design: knowledge thresholds, labor demands, shape.

    ``span`` is worker_demand / expert_demand, or None when the hierarchy has
    collapsed to a single layer (expert_demand == 0, x_star == 1); the CSV
    layer serializes that as the literal token ``collapsed``.
    """

    x_star: float
    y_star: float
    worker_demand: float
    expert_demand: float
    span: float | None
    profit: float
    collapsed: bool


@dataclass(frozen=True)
class AdoptionDecision:
    """Whether deploying the AI beats staying with the pre-AI organization.

    profit_with is the best profit attainable on the mode's profit map,
    profit_without the pre-AI optimum.  Ties within ADOPTION_TIE_TOL resolve
    to no-adoption.
    """

    adopt: bool
    binding_constraint: str
    profit_with: float
    profit_without: float


@dataclass(frozen=True)
class ThresholdBundle:
    """Every closed-form threshold relevant to the active mode.

    Keys name what each threshold does rather than a symbol:

    - ``adopt_h_max``   largest hallucination rate at which adoption pays
    - ``adopt_r_min``   smallest capability at which adoption pays
    - ``adopt_b_max``   largest hallucination coefficient (coupled variants)
    - ``collapse_h_max`` / ``collapse_r_min``  single-layer collapse region
    - ``span_min_r`` / ``span_min_h``  turning point of the U-shaped span
    - ``cost_floor`` / ``adopt_cost_max``  investment-cost bounds

    A value of None flags "not applicable at these parameters" (the defining
    expression has no real value there).
    """

    mode: Mode
    values: Mapping[str, float | None]

    def get(self, name: str) -> float | None:
        return self.values.get(name)

    def __getitem__(self, name: str) -> float | None:
        return self.values[name]

    def as_text(self) -> str:
        """Stable one-line rendering used in CSV output (sorted by key)."""
        parts = []
        for key in sorted(self.values):
            v = self.values[key]
            parts.append(f"{key}={'na' if v is None else format(v, '.12g')}")
        return ";".join(parts)


@dataclass(frozen=True)
class SolveResult:
    """Full outcome of one scenario solve.

    ``design`` is the organization the firm actually runs (the pre-AI design
    when adoption does not pay).  ``x_candidate`` is the argmax of the mode's
    profit map regardless of adoption, which is what numeric oracles check.
    """

    mode: Mode
    params: ModelParams
    config: DeploymentConfig
    design: OrgDesign
    adoption: AdoptionDecision | None
    thresholds: ThresholdBundle
    x_candidate: float
    regime: str

    @property
    def adopted(self) -> bool:
        return self.adoption.adopt if self.adoption is not None else False
