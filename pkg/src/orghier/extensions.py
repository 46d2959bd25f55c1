"""Model extensions: execution-productivity gains, capability-reliability
coupling, endogenous investment in capability and reliability, and endogenous
expert knowledge.

Closed forms are used wherever they exist.  The numeric-only cases (the
productivity variant, worker-level automation with capability investment, all
dual-investment problems, and every endogenous-expert problem) share one
two-stage scheme: a coarse grid (step 1e-3 per axis) followed by local
golden-section refinement per axis to 1e-8, with deterministic lowest-index
tie-breaks, so results are bitwise independent of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import closed_form as cf
from .oracle import ScalarProblem, _golden_max, maximize_pair, maximize_scalar
from .params import (
    ADOPTION_TIE_TOL,
    AdoptionDecision,
    DeploymentConfig,
    FeasibilityError,
    Mode,
    ModelParams,
    OrgDesign,
    SolveResult,
    ThresholdBundle,
    check_unit_open,
    validate_params,
)

__all__ = [
    "ProductivityConfig",
    "CouplingConfig",
    "InvestmentCosts",
    "InvestmentDesign",
    "CoefficientTooSmall",
    "ConvergenceError",
    "productivity_solve",
    "coupled_solve",
    "capability_invest_solve",
    "dual_invest_solve",
    "expert_knowledge_solve",
]

COARSE_STEP = 1e-3
REFINE_TOL = 1e-8
RELIABILITY_FLOOR = 1e-6
"""Lower limit of the hallucination search: the cost of pushing h to zero
diverges, so the optimum is always interior to (0, h_bar0]."""


class CoefficientTooSmall(FeasibilityError):
    """The investment cost coefficient is at or below the mode's lower bound,
    where the closed forms stop being valid (profit no longer concave or the
    chosen capability would leave (0, 1))."""


class ConvergenceError(RuntimeError):
    """Nested grid refinement kept moving beyond tolerance."""


@dataclass(frozen=True)
class ProductivityConfig:
    """Worker-level augmentation with an execution speed-up of 1 + r_g*A on
    tasks inside the worker's own knowledge range.  A = 0 reduces to plain
    worker-level augmentation."""

    r_g: float
    h: float
    A: float

    def validated(self) -> "ProductivityConfig":
        check_unit_open("r_g", self.r_g)
        check_unit_open("h", self.h)
        if not self.A >= 0.0:
            raise FeasibilityError(f"A >= 0 violated: A = {self.A}")
        return self


@dataclass(frozen=True)
class CouplingConfig:
    """Reliability tied to capability through h = b(1-r), b in (0,1)."""

    b: float
    r: float

    def validated(self) -> "CouplingConfig":
        check_unit_open("b", self.b)
        check_unit_open("r", self.r)
        return self

    @property
    def implied_h(self) -> float:
        return self.b * (1.0 - self.r)


@dataclass(frozen=True)
class InvestmentCosts:
    """Convex investment cost coefficients.

    Capability costs c_r/2 * r^2.  Reliability costs (c_h/10)(h_bar0/h - 1),
    diverging as h -> 0; c_h = 0 disables the reliability lever and pins
    h = h_bar0.
    """

    c_r: float
    c_h: float = 0.0
    h_bar0: float = 0.0

    def validated(self) -> "InvestmentCosts":
        if not self.c_r > 0.0:
            raise FeasibilityError(f"c_r > 0 violated: c_r = {self.c_r}")
        if not self.c_h >= 0.0:
            raise FeasibilityError(f"c_h >= 0 violated: c_h = {self.c_h}")
        if not 0.0 < self.h_bar0 < 1.0:
            raise FeasibilityError(f"0 < h_bar0 < 1 violated: h_bar0 = {self.h_bar0}")
        return self


@dataclass(frozen=True)
class InvestmentDesign:
    """Chosen capability/reliability plus the induced organization.

    ``design.profit`` is gross of investment; net_profit subtracts
    total_cost.  When adoption does not pay, r_star is 0, h_star echoes the
    uninvested rate, and the inner design is the pre-AI optimum.
    """

    mode: Mode
    r_star: float
    h_star: float
    design: OrgDesign
    total_cost: float
    net_profit: float
    adoption: AdoptionDecision
    thresholds: ThresholdBundle


# ---------------------------------------------------------------------------
# productivity-augmented worker augmentation

def productivity_worker_demand(cfg: ProductivityConfig, x):
    return x / (1.0 + cfg.r_g * cfg.A) + 1.0 - x


def productivity_profit(p: ModelParams, cfg: ProductivityConfig, x):
    """Profit with accelerated execution on [0, x]; the expert side is the
    plain augmentation accounting."""
    expert = (1.0 - x) * cf.worker_aug_expert_coeff(p, cfg.r_g, cfg.h)
    return 1.0 - p.worker_wage(x) * productivity_worker_demand(cfg, x) - p.expert_wage() * expert


def productivity_solve(params: ModelParams, cfg: ProductivityConfig) -> SolveResult:
    """Numeric optimum of the productivity variant over x in [0, 1]."""
    p = validate_params(params, Mode.WORKER_AUG)
    cfg = cfg.validated()
    base = cf.baseline_solve(p)
    x_star, profit = maximize_scalar(
        ScalarProblem(lambda x: productivity_profit(p, cfg, x), 0.0, 1.0, REFINE_TOL)
    )
    worker_demand = float(productivity_worker_demand(cfg, x_star))
    expert_demand = (1.0 - x_star) * cf.worker_aug_expert_coeff(p, cfg.r_g, cfg.h)
    collapsed = expert_demand <= 0.0
    design = OrgDesign(
        x_star=x_star,
        y_star=1.0,
        worker_demand=worker_demand,
        expert_demand=max(expert_demand, 0.0),
        span=None if collapsed else worker_demand / expert_demand,
        profit=profit,
        collapsed=collapsed,
    )
    adopt = profit - base.design.profit > ADOPTION_TIE_TOL
    decision = AdoptionDecision(
        adopt=adopt,
        binding_constraint="profit_with > profit_without" if adopt else "profit_with <= profit_without",
        profit_with=profit,
        profit_without=base.design.profit,
    )
    bundle = ThresholdBundle(
        Mode.WORKER_AUG, {"adopt_h_max": 1.0 - p.t_v / p.t_c}
    )
    regime = "collapsed" if collapsed else ("corner" if x_star >= 1.0 else "interior")
    return SolveResult(
        mode=Mode.WORKER_AUG,
        params=p,
        config=DeploymentConfig(Mode.WORKER_AUG, r=cfg.r_g, h=cfg.h),
        design=design if adopt else base.design,
        adoption=decision,
        thresholds=bundle,
        x_candidate=x_star,
        regime=regime if adopt else "not-adopted",
    )


# ---------------------------------------------------------------------------
# capability-reliability coupling

def _coupled_thresholds(p: ModelParams, mode: Mode, r: float, b: float) -> dict[str, float | None]:
    k, w, t_c = p.k, p.w, p.t_c
    kw = k + 2.0 * w
    if mode is Mode.WORKER_AUTO:
        t_v, t_r = p.t_v, p.t_r
        x0 = cf.baseline_x(p)
        if r <= x0:
            adopt_b_max = (1.0 - t_v) / ((1.0 - r) * t_r)
        else:
            adopt_b_max = (1.0 - t_v) / ((1.0 - r) * t_r) - (
                (2.0 * k * r - k * t_c - 2.0 * w * t_c) ** 2
            ) / (4.0 * k * r * t_r * (1.0 - r) * (k * r**2 + 2.0 * w))
        disc = (
            k**2 * t_r**2 * b**2
            - 2.0 * k * t_r * (kw * t_c - k * (1.0 + t_v)) * b
            + k**2 * (1.0 - t_v) ** 2
        )
        collapse_r_min = (
            (-(k * (1.0 - t_v - b * t_r)) + math.sqrt(disc)) / (2.0 * b * k * t_r)
            if disc >= 0.0
            else None
        )
        return {"adopt_b_max": adopt_b_max, "collapse_r_min": collapse_r_min}
    if mode is Mode.WORKER_AUG:
        t_v = p.t_v
        adopt_r_min = 1.0 - (t_c - t_v) / (b * t_c)
        span_min_r: float | None = None
        if t_c > k / kw:
            disc = (
                kw * t_c**2 * b**2
                + 2.0 * t_c * (k * t_c + k * t_v + 2.0 * t_c * w + 2.0 * t_v * w - 2.0 * k) * b
                + kw * (t_c - t_v) ** 2
            )
            if disc >= 0.0:
                span_min_r = (
                    kw * (b * t_c - t_c + t_v) + math.sqrt(disc) * math.sqrt(kw)
                ) / (2.0 * b * kw * t_c)
        return {"adopt_r_min": adopt_r_min, "span_min_r": span_min_r}
    if mode is Mode.EXPERT_AUTO:
        t_v = p.t_v
        adopt_r_min = max(
            1.0 - (t_c - t_v) / (b * t_c),
            kw * (b * t_c + t_c + t_v) / (4.0 * k + b * k * t_c + 2.0 * b * t_c * w),
        )
        span_min_r = (
            t_c**2 * kw * b**2 + t_c * (k + kw * t_v) * b - k * (t_c - t_v)
        ) / (b * t_c * (2.0 * k + b * kw * t_c))
        return {"adopt_r_min": adopt_r_min, "span_min_r": span_min_r}
    if mode is Mode.EXPERT_AUG:
        return {
            "adopt_r_min": b / (1.0 + b),
            "span_min_r": ((1.0 + b) * kw * t_c - k) / ((1.0 + b) * kw * t_c),
        }
    raise FeasibilityError(f"coupling is undefined for mode {mode.value}")


def coupled_solve(params: ModelParams, mode: Mode, r: float, b: float) -> SolveResult:
    """Solve a mode with reliability tied to capability, h = b(1-r).

    The coupled closed forms coincide with the exogenous-h forms evaluated at
    the implied rate, so the design is delegated to the standard solver; the
    threshold bundle and adoption constraint are restated on the (r, b) axes.
    """
    if mode is Mode.BASELINE:
        raise FeasibilityError("coupling requires a deployment mode, not baseline")
    cfg = CouplingConfig(b=b, r=r).validated()
    p = validate_params(params, mode)
    inner = cf.solve(p, DeploymentConfig(mode, r=r, h=cfg.implied_h))
    values = _coupled_thresholds(p, mode, r, b)
    assert inner.adoption is not None
    if mode is Mode.WORKER_AUTO:
        ok, fail = "b < adopt_b_max", "b >= adopt_b_max"
    else:
        ok, fail = "r > adopt_r_min", "r <= adopt_r_min"
    decision = AdoptionDecision(
        adopt=inner.adoption.adopt,
        binding_constraint=ok if inner.adoption.adopt else fail,
        profit_with=inner.adoption.profit_with,
        profit_without=inner.adoption.profit_without,
    )
    return SolveResult(
        mode=mode,
        params=p,
        config=inner.config,
        design=inner.design,
        adoption=decision,
        thresholds=ThresholdBundle(mode, values),
        x_candidate=inner.x_candidate,
        regime=inner.regime,
    )


# ---------------------------------------------------------------------------
# investment in capability (reliability fixed)

def _invest_result(p: ModelParams, mode: Mode, r_star: float, h: float,
                   c_r: float, design: OrgDesign, values: dict[str, float | None],
                   binding_ok: str, binding_fail: str) -> InvestmentDesign:
    base = cf.baseline_solve(p)
    cost = 0.5 * c_r * r_star * r_star
    net = design.profit - cost
    adopt = net - base.design.profit > ADOPTION_TIE_TOL
    if not adopt:
        r_star, cost = 0.0, 0.0
        design = base.design
        net = base.design.profit
    decision = AdoptionDecision(
        adopt=adopt,
        binding_constraint=binding_ok if adopt else binding_fail,
        profit_with=net if adopt else design.profit,
        profit_without=base.design.profit,
    )
    return InvestmentDesign(
        mode=mode,
        r_star=r_star,
        h_star=h,
        design=design,
        total_cost=cost,
        net_profit=net,
        adoption=decision,
        thresholds=ThresholdBundle(mode, values),
    )


def capability_invest_solve(params: ModelParams, mode: Mode, c_r: float, h: float
                            ) -> InvestmentDesign:
    """Choose the capability level under a convex cost c_r/2 * r^2 with the
    hallucination rate fixed.

    Worker augmentation and both expert modes have closed forms, valid only
    above a mode-specific cost floor (CoefficientTooSmall below it).
    Worker-level automation has no closed form and is solved by the 2-D grid
    scheme over (x, r) with the validator constraint x >= r.
    """
    if mode is Mode.BASELINE:
        raise FeasibilityError("capability investment requires a deployment mode")
    p = validate_params(params, mode)
    check_unit_open("h", h)
    if not c_r > 0.0:
        raise FeasibilityError(f"c_r > 0 violated: c_r = {c_r}")
    k, w, t_c = p.k, p.w, p.t_c
    kw = k + 2.0 * w

    if mode is Mode.WORKER_AUTO:
        def objective(x, r):
            return cf.pi_worker_auto(p, r, h, x) - 0.5 * c_r * r * r

        # capability stays inside the open unit interval; x = 1 (collapse) is a
        # meaningful corner and stays reachable
        (x_star, r_star), gross_net = maximize_pair(
            objective, ((0.0, 1.0), (0.0, 1.0 - COARSE_STEP)),
            constraint=lambda x, r: x >= r, tol=REFINE_TOL,
        )
        gross = gross_net + 0.5 * c_r * r_star * r_star
        wd = cf.worker_auto_demand(p, r_star, h) if r_star > 0.0 else 1.0
        ed = (1.0 - x_star) * t_c
        design = OrgDesign(
            x_star=x_star, y_star=1.0, worker_demand=wd, expert_demand=ed,
            span=None if ed == 0.0 else wd / ed, profit=gross,
            collapsed=ed == 0.0,
        )
        return _invest_result(
            p, mode, r_star, h, c_r, design, {},
            "net_profit > profit_without", "net_profit <= profit_without",
        )

    if mode is Mode.WORKER_AUG:
        saving = t_c - t_v_of(p) - h * t_c
        c1 = kw**2 * saving**2 / (4.0 * k)
        c2 = kw * saving * (kw * (h * t_c + t_v_of(p)) - 2.0 * k) / (4.0 * k)
        floor = max(c1, c2)
        # concavity holds above `floor`; an interior r* < 1 additionally needs
        # the cost to exceed the level where the chosen capability reaches 1
        interior = kw * saving * (2.0 * k - kw * (h * t_c + t_v_of(p))) / (4.0 * k)
        if c_r <= max(floor, interior):
            raise CoefficientTooSmall(
                f"c_r > cost_floor violated: c_r = {c_r}, "
                f"cost_floor = {max(floor, interior)}"
            )
        r_star = kw * (2.0 * k - kw * t_c) * saving / (4.0 * k * c_r - kw**2 * saving**2)
        values: dict[str, float | None] = {
            "cost_floor": floor,
            "adopt_h_max": 1.0 - t_v_of(p) / t_c,
        }
        if r_star <= 0.0:
            return _invest_result(
                p, mode, 0.0, h, c_r, cf.baseline_solve(p).design, values,
                "h < adopt_h_max", "h >= adopt_h_max",
            )
        inner = cf.worker_aug_solve(p, r_star, h)
        return _invest_result(
            p, mode, r_star, h, c_r, _candidate_design(inner), values,
            "h < adopt_h_max", "h >= adopt_h_max",
        )

    if mode is Mode.EXPERT_AUTO:
        saving = t_c - h * t_c - t_v_of(p)
        floor = kw * saving / 2.0
        if c_r <= floor:
            raise CoefficientTooSmall(
                f"c_r > cost_floor violated: c_r = {c_r}, cost_floor = {floor}"
            )
        cost_max = k * saving / (h * t_c + t_c + t_v_of(p))
        values = {
            "cost_floor": floor,
            "adopt_cost_max": cost_max,
            "adopt_h_max": 1.0 - t_v_of(p) / t_c,
        }
        r_star = kw * saving / (2.0 * c_r)
        if r_star <= 0.0:
            return _invest_result(
                p, mode, 0.0, h, c_r, cf.baseline_solve(p).design, values,
                "h < adopt_h_max and c_r < adopt_cost_max",
                "h >= adopt_h_max",
            )
        inner = cf.expert_auto_solve(p, r_star, h)
        return _invest_result(
            p, mode, r_star, h, c_r, _candidate_design(inner), values,
            "h < adopt_h_max and c_r < adopt_cost_max",
            "h >= adopt_h_max" if h >= 1.0 - t_v_of(p) / t_c else "c_r >= adopt_cost_max",
        )

    # expert augmentation
    c3 = kw**2 * t_c**2 / (4.0 * k)
    c4 = (2.0 * k**2 + 4.0 * k * w - h * kw**2 * t_c) * t_c / (4.0 * k)
    floor = max(c3, c4)
    if c_r <= floor:
        raise CoefficientTooSmall(
            f"c_r > cost_floor violated: c_r = {c_r}, cost_floor = {floor}"
        )
    root = k * c_r * (4.0 * k * c_r - kw**2 * t_c**2)
    adopt_h_max = (
        (2.0 * k - kw * t_c) * (2.0 * k * c_r - math.sqrt(root))
        / (2.0 * k * c_r * kw * t_c)
    ) if root >= 0.0 else None
    values = {"cost_floor": floor, "adopt_h_max": adopt_h_max}
    r_star = kw * (2.0 * k - kw * (1.0 + h) * t_c) * t_c / (4.0 * k * c_r - kw**2 * t_c**2)
    if r_star <= 0.0:
        return _invest_result(
            p, mode, 0.0, h, c_r, cf.baseline_solve(p).design, values,
            "h < adopt_h_max", "h >= adopt_h_max",
        )
    inner = cf.expert_aug_solve(p, r_star, h)
    return _invest_result(
        p, mode, r_star, h, c_r, _candidate_design(inner), values,
        "h < adopt_h_max", "h >= adopt_h_max",
    )


def t_v_of(p: ModelParams) -> float:
    assert p.t_v is not None
    return p.t_v


def _candidate_design(result: SolveResult) -> OrgDesign:
    """The mode-optimal design of a solve, whether or not it was adopted."""
    if result.adopted:
        return result.design
    p, config = result.params, result.config
    x = result.x_candidate
    assert config.r is not None and config.h is not None
    if result.mode is Mode.WORKER_AUTO:
        wd = cf.worker_auto_demand(p, config.r, config.h)
        ed = (1.0 - x) * p.t_c
    elif result.mode is Mode.WORKER_AUG:
        wd = 1.0
        ed = (1.0 - x) * cf.worker_aug_expert_coeff(p, config.r, config.h)
    elif result.mode is Mode.EXPERT_AUTO:
        wd = 1.0
        ed = float(cf.expert_auto_demand(p, config.r, config.h, x)) if x <= config.r \
            else (1.0 - x) * p.t_c
    else:
        wd = 1.0
        ed = (1.0 - x) * cf.expert_aug_consult(p, config.r, config.h)
    assert result.adoption is not None
    return OrgDesign(
        x_star=x, y_star=1.0, worker_demand=wd, expert_demand=ed,
        span=None if ed == 0.0 else wd / ed,
        profit=result.adoption.profit_with, collapsed=ed == 0.0,
    )


# ---------------------------------------------------------------------------
# joint investment in capability and reliability

def _dual_inner_x(p: ModelParams, mode: Mode, r, h):
    """Exact inner worker-knowledge optimum given (r, h); broadcastable."""
    x0 = cf.baseline_x(p)
    if mode is Mode.WORKER_AUTO:
        return np.clip(x0 / cf.worker_auto_demand(p, r, h), r, 1.0)
    return np.clip(
        p.worker_wage_coeff * (r * p.t_v + (1.0 + r * h - r) * p.t_c) / (2.0 * p.k),
        0.0, 1.0,
    )


def _dual_gross(p: ModelParams, mode: Mode, r, h, x):
    if mode is Mode.WORKER_AUTO:
        return cf.pi_worker_auto(p, r, h, x)
    return cf.pi_worker_aug(p, r, h, x)


def dual_invest_solve(params: ModelParams, mode: Mode, costs: InvestmentCosts
                      ) -> InvestmentDesign:
    """Jointly choose capability r and hallucination rate h (plus the worker
    knowledge level) under cost c_r/2 r^2 + (c_h/10)(h_bar0/h - 1).

    Worker modes only.  The (r, h) plane is scanned on the coarse 1e-3 grid
    with the exact inner x profile, then refined per axis by golden section;
    a restart loop guards against the refinement drifting more than one
    coarse cell (ConvergenceError if it will not settle).
    """
    if mode not in (Mode.WORKER_AUTO, Mode.WORKER_AUG):
        raise FeasibilityError(
            f"dual investment supports worker-level modes only, got {mode.value}"
        )
    p = validate_params(params, mode)
    costs = costs.validated()
    base = cf.baseline_solve(p)

    h_lo = min(RELIABILITY_FLOOR, costs.h_bar0 / 2.0)
    if costs.c_h == 0.0:
        h_grid = np.array([costs.h_bar0])
    else:
        n_h = max(int(round((costs.h_bar0 - h_lo) / COARSE_STEP)) + 1, 2)
        h_grid = np.linspace(h_lo, costs.h_bar0, n_h)
    r_grid = np.linspace(COARSE_STEP, 1.0 - COARSE_STEP, 999)

    def rel_cost(h):
        if costs.c_h == 0.0:
            return 0.0 if np.isscalar(h) else np.zeros_like(h)
        return (costs.c_h / 10.0) * (costs.h_bar0 / h - 1.0)

    R = r_grid[:, None]
    H = h_grid[None, :]
    X = _dual_inner_x(p, mode, R, H)
    net = (
        _dual_gross(p, mode, R, H, X)
        - 0.5 * costs.c_r * R * R
        - rel_cost(H)
    )
    flat = int(np.argmax(net))
    i, j = divmod(flat, h_grid.size)
    r_star, h_star = float(r_grid[i]), float(h_grid[j])
    best = float(net[i, j])

    def point_net(r: float, h: float) -> float:
        x = float(_dual_inner_x(p, mode, r, h))
        return float(_dual_gross(p, mode, r, h, x)) - 0.5 * costs.c_r * r * r - float(rel_cost(h))

    for _restart in range(5):
        start = (r_star, h_star)
        for _ in range(40):
            moved = 0.0
            nr, nv = _golden_max(
                lambda t: point_net(t, h_star),
                max(COARSE_STEP, r_star - COARSE_STEP),
                min(1.0 - COARSE_STEP, r_star + COARSE_STEP),
                REFINE_TOL,
            )
            if nv > best:
                moved = max(moved, abs(nr - r_star))
                r_star, best = nr, nv
            if costs.c_h > 0.0:
                nh, nv = _golden_max(
                    lambda t: point_net(r_star, t),
                    max(h_lo, h_star - COARSE_STEP),
                    min(costs.h_bar0, h_star + COARSE_STEP),
                    REFINE_TOL,
                )
                if nv > best:
                    moved = max(moved, abs(nh - h_star))
                    h_star, best = nh, nv
            if moved < REFINE_TOL:
                break
        if max(abs(r_star - start[0]), abs(h_star - start[1])) <= COARSE_STEP:
            break
    else:
        raise ConvergenceError(
            "dual-investment refinement kept drifting by more than one coarse cell"
        )

    x_star = float(_dual_inner_x(p, mode, r_star, h_star))
    gross = float(_dual_gross(p, mode, r_star, h_star, x_star))
    cost = 0.5 * costs.c_r * r_star**2 + float(rel_cost(h_star))
    if mode is Mode.WORKER_AUTO:
        wd = cf.worker_auto_demand(p, r_star, h_star)
        ed = (1.0 - x_star) * p.t_c
    else:
        wd = 1.0
        ed = (1.0 - x_star) * cf.worker_aug_expert_coeff(p, r_star, h_star)
    design = OrgDesign(
        x_star=x_star, y_star=1.0, worker_demand=wd, expert_demand=ed,
        span=None if ed == 0.0 else wd / ed, profit=gross, collapsed=ed == 0.0,
    )
    net_profit = gross - cost
    adopt = net_profit - base.design.profit > ADOPTION_TIE_TOL
    if not adopt:
        design = base.design
        r_star, h_star, cost, net_profit = 0.0, costs.h_bar0, 0.0, base.design.profit
    decision = AdoptionDecision(
        adopt=adopt,
        binding_constraint=(
            "net_profit > profit_without" if adopt else "net_profit <= profit_without"
        ),
        profit_with=net_profit if adopt else gross - cost,
        profit_without=base.design.profit,
    )
    return InvestmentDesign(
        mode=mode, r_star=r_star, h_star=h_star, design=design,
        total_cost=cost, net_profit=net_profit, adoption=decision,
        thresholds=ThresholdBundle(mode, {"reliability_floor": RELIABILITY_FLOOR}),
    )


# ---------------------------------------------------------------------------
# endogenous expert knowledge

@lru_cache(maxsize=256)
def _expert_baseline(params: ModelParams) -> SolveResult:
    """Endogenous-expert benchmark, cached per parameter record (it only
    depends on k, w, t_c and every solve against it is pure)."""
    return expert_knowledge_solve(params, DeploymentConfig(Mode.BASELINE))


def _validate_relaxed(params: ModelParams, mode: Mode) -> ModelParams:
    """Validation with the communication-cost ceiling relaxed to t_c < 2:
    with expert knowledge endogenous, expert wages scale with y and the fixed
    ceiling no longer applies."""
    k, w, t_c = params.k, params.w, params.t_c
    if not k > 0.0:
        raise FeasibilityError(f"k > 0 violated: k = {k}")
    if not w > 0.0:
        raise FeasibilityError(f"w > 0 violated: w = {w}")
    if not 0.0 < t_c < 2.0:
        raise FeasibilityError(f"0 < t_c < 2 violated: t_c = {t_c}")
    if mode in (Mode.WORKER_AUTO, Mode.WORKER_AUG, Mode.EXPERT_AUTO):
        if params.t_v is None or not 0.0 < params.t_v < 1.0:
            raise FeasibilityError(f"0 < t_v < 1 violated: t_v = {params.t_v}")
    if mode is Mode.WORKER_AUTO:
        if params.t_r is None or not 0.0 < params.t_r < 1.0:
            raise FeasibilityError(f"0 < t_r < 1 violated: t_r = {params.t_r}")
        if not params.t_v + params.t_r > 1.0:
            raise FeasibilityError(
                f"t_v + t_r > 1 violated: t_v + t_r = {params.t_v + params.t_r}"
            )
    return params


def _expert_knowledge_objective(p: ModelParams, config: DeploymentConfig):
    """(objective, constraint, staffing) for the endogenous-expert problem.

    Revenue equals y (tasks above the expert ceiling go unsolved); each
    expert is paid w + k y^2 / 2.  Escalations consume expert time whether or
    not they can ultimately be solved, so staffing keeps the same time
    accounting as the fixed-expert model.
    """
    mode, r, h = config.mode, config.r, config.h
    t_c = p.t_c

    if mode is Mode.BASELINE:
        staffing = lambda x: (1.0 - x) * t_c
        constraint = lambda x, y: x <= y
        worker_cost = lambda x: p.worker_wage(x)
    elif mode is Mode.WORKER_AUTO:
        staffing = lambda x: (1.0 - x) * t_c
        constraint = lambda x, y: (x >= r) & (x <= y)
        worker_cost = lambda x: p.worker_wage(x) * cf.worker_auto_demand(p, r, h)
    elif mode is Mode.WORKER_AUG:
        staffing = lambda x: (1.0 - x) * cf.worker_aug_expert_coeff(p, r, h)
        constraint = lambda x, y: x + r * (1.0 - x) <= y
        worker_cost = lambda x: p.worker_wage(x)
    elif mode is Mode.EXPERT_AUTO:
        staffing = lambda x: cf.expert_auto_demand(p, r, h, x)
        constraint = lambda x, y: (x <= r) & (y >= r)
        worker_cost = lambda x: p.worker_wage(x)
    else:
        staffing = lambda x: (1.0 - x) * cf.expert_aug_consult(p, r, h)
        constraint = lambda x, y: x <= y
        worker_cost = lambda x: p.worker_wage(x)

    def objective(x, y):
        return y - worker_cost(x) - p.expert_wage(y) * staffing(x)

    return objective, constraint, staffing


def expert_knowledge_solve(params: ModelParams, config: DeploymentConfig) -> SolveResult:
    """Jointly choose worker and expert knowledge levels (x, y).

    Numeric for every mode via the 2-D grid scheme.  For the pre-AI
    organization with k below 1/t_c the full-knowledge face is optimal; the
    solver checks the numeric optimum against that exact corner and returns
    it exactly.
    """
    mode = config.mode
    p = _validate_relaxed(params, mode)
    if mode is not Mode.BASELINE:
        config = config.validated()

    objective, constraint, staffing = _expert_knowledge_objective(p, config)
    (x_star, y_star), profit = maximize_pair(
        objective, ((0.0, 1.0), (0.0, 1.0)), constraint=constraint, tol=REFINE_TOL
    )

    if mode is Mode.BASELINE and p.k < 1.0 / p.t_c:
        x_exact = p.worker_wage_coeff * p.t_c / (2.0 * p.k)
        if abs(y_star - 1.0) > 1e-3 or abs(x_star - x_exact) > 1e-3:
            raise ConvergenceError(
                "endogenous-expert baseline failed to reach the full-knowledge "
                f"corner: got (x={x_star}, y={y_star}), expected (x={x_exact}, y=1)"
            )
        x_star, y_star = x_exact, 1.0
        profit = float(objective(x_star, y_star))

    worker_demand = (
        cf.worker_auto_demand(p, config.r, config.h)
        if mode is Mode.WORKER_AUTO
        else 1.0
    )
    expert_demand = float(staffing(x_star))
    collapsed = expert_demand <= 0.0
    design = OrgDesign(
        x_star=x_star, y_star=y_star, worker_demand=worker_demand,
        expert_demand=max(expert_demand, 0.0),
        span=None if collapsed else worker_demand / expert_demand,
        profit=profit, collapsed=collapsed,
    )
    if mode is Mode.BASELINE:
        adoption = None
        regime = "baseline"
    else:
        base = _expert_baseline(p)
        adopt = profit - base.design.profit > ADOPTION_TIE_TOL
        adoption = AdoptionDecision(
            adopt=adopt,
            binding_constraint=(
                "profit_with > profit_without" if adopt else "profit_with <= profit_without"
            ),
            profit_with=profit,
            profit_without=base.design.profit,
        )
        regime = ("interior" if y_star < 1.0 else "full-expert") if adopt else "not-adopted"
        if not adopt:
            design = base.design
    bundle = ThresholdBundle(mode, {"expert_full_k_max": 1.0 / p.t_c})
    return SolveResult(
        mode=mode, params=p, config=config, design=design, adoption=adoption,
        thresholds=bundle, x_candidate=x_star, regime=regime,
    )
