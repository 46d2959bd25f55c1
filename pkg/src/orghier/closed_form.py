"""Closed-form profit maximization for the baseline and the four architectures.

Each solver evaluates the architecture's profit map, locates its exact optimum
from the closed-form expressions, bundles every regime threshold, and decides
adoption by comparing the attainable profit against the pre-AI optimum with a
1e-12 tie tolerance.  All profit evaluators broadcast over numpy arrays.
"""

from __future__ import annotations

import math

import numpy as np

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
    check_unit_open,
    validate_params,
)

__all__ = [
    "lower_bound",
    "profit_eval",
    "baseline_solve",
    "worker_auto_solve",
    "worker_aug_solve",
    "expert_auto_solve",
    "expert_aug_solve",
    "solve",
]


# ---------------------------------------------------------------------------
# profit maps (numpy-broadcastable in x)

def pi_baseline(p: ModelParams, x):
    """Pre-AI profit: one worker, (1-x)*t_c experts."""
    return 1.0 - p.worker_wage(x) - p.expert_wage() * (1.0 - x) * p.t_c


def worker_auto_demand(p: ModelParams, r: float, h: float) -> float:
    """Worker time per task under worker-level automation:
    (1-r) manual work + r*(t_v + h*t_r) validation and expected rework."""
    return (1.0 - r) + (p.t_v + h * p.t_r) * r


def pi_worker_auto(p: ModelParams, r: float, h: float, x):
    return (
        1.0
        - p.worker_wage(x) * worker_auto_demand(p, r, h)
        - p.expert_wage() * (1.0 - x) * p.t_c
    )


def worker_aug_expert_coeff(p: ModelParams, r: float, h: float) -> float:
    """Expert time per unit of escalation mass under worker-level augmentation:
    validation plus expected correction on the AI-stretched band, plain
    consultation beyond it."""
    return r * (p.t_v + h * p.t_c) + (1.0 - r) * p.t_c


def pi_worker_aug(p: ModelParams, r: float, h: float, x):
    return (
        1.0
        - p.worker_wage(x)
        - p.expert_wage() * (1.0 - x) * worker_aug_expert_coeff(p, r, h)
    )


def expert_auto_demand(p: ModelParams, r: float, h: float, x):
    """Expert time per task under expert-level automation, AI-mediated branch
    (x <= r): plain consults beyond r plus validation/correction on (x, r]."""
    return (1.0 - r) * p.t_c + (r - x) * (p.t_v + h * p.t_c)


def pi_expert_auto(p: ModelParams, r: float, h: float, x):
    """Piecewise profit: AI-mediated branch for x <= r, pre-AI branch above."""
    ai = 1.0 - p.worker_wage(x) - p.expert_wage() * expert_auto_demand(p, r, h, x)
    return np.where(np.asarray(x) <= r, ai, pi_baseline(p, x))


def expert_aug_consult(p: ModelParams, r: float, h: float) -> float:
    """Expected expert time per consultation: accelerated consult plus manual
    fallback on hallucination."""
    return (1.0 - r) * p.t_c + h * p.t_c


def pi_expert_aug(p: ModelParams, r: float, h: float, x):
    return 1.0 - p.worker_wage(x) - p.expert_wage() * (1.0 - x) * expert_aug_consult(p, r, h)


def lower_bound(mode: Mode, config: DeploymentConfig) -> float:
    """Smallest feasible worker knowledge level.  Worker-level automation must
    hire validators at least as knowledgeable as the automation scope."""
    if mode is Mode.WORKER_AUTO:
        assert config.r is not None
        return config.r
    return 0.0


def profit_eval(params: ModelParams, config: DeploymentConfig, x) -> float:
    """Evaluate the active mode's profit map at worker knowledge level x.

    Broadcasts over arrays; raises DomainError when any x lies outside the
    mode's feasible interval [lower_bound, 1].
    """
    p = validate_params(params, config.mode)
    config = config.validated()
    xa = np.asarray(x, dtype=float)
    lo = lower_bound(config.mode, config)
    if np.any(xa < lo) or np.any(xa > 1.0):
        raise DomainError(
            f"x outside feasible interval [{lo}, 1] for mode {config.mode.value}: x = {x}"
        )
    if config.mode is Mode.BASELINE:
        out = pi_baseline(p, xa)
    elif config.mode is Mode.WORKER_AUTO:
        out = pi_worker_auto(p, config.r, config.h, xa)
    elif config.mode is Mode.WORKER_AUG:
        out = pi_worker_aug(p, config.r, config.h, xa)
    elif config.mode is Mode.EXPERT_AUTO:
        out = pi_expert_auto(p, config.r, config.h, xa)
    else:
        out = pi_expert_aug(p, config.r, config.h, xa)
    return float(out) if np.isscalar(x) or np.asarray(x).ndim == 0 else out


# ---------------------------------------------------------------------------
# threshold bundles

def _worker_auto_thresholds(p: ModelParams, r: float, h: float) -> dict[str, float | None]:
    k, w, t_c, t_v, t_r = p.k, p.w, p.t_c, p.t_v, p.t_r
    x0 = baseline_x(p)
    kw = k + 2.0 * w

    if r <= x0:
        adopt_h_max = (1.0 - t_v) / t_r
    else:
        adopt_h_max = (
            -(kw**2) * t_c**2
            + 4.0 * k * r * kw * t_c
            - 4.0 * k * r * (k * r - (1.0 - t_v) * (k * r**2 + 2.0 * w))
        ) / (4.0 * k * r * t_r * (k * r**2 + 2.0 * w))

    collapse_h_max = (kw * t_c - 2.0 * k * t_v) / (2.0 * k * t_r)

    slack = 1.0 - t_v - h * t_r  # net labor saved per automated task
    collapse_r_min = (2.0 * k - kw * t_c) / (2.0 * k * slack) if slack > 0.0 else None

    span_min_r: float | None
    if slack > 0.0:
        r1a = (k - kw * t_c) / (k * slack)
        h_split = (2.0 * t_c * (1.0 - t_v) * kw - k) / (2.0 * t_c * t_r * kw)
        if h <= h_split:
            span_min_r = r1a
        else:
            disc = 1.0 - 4.0 * slack * x0
            r2a = (1.0 - math.sqrt(disc)) / (2.0 * slack) if disc >= 0.0 else None
            span_min_r = r1a if r2a is None else min(r1a, r2a)
    else:
        span_min_r = None

    h2b = (kw * t_c - k + r * k * (1.0 - t_v)) / (k * t_r * r)
    if r <= x0:
        span_min_h = h2b
    else:
        h1a = (2.0 * k * r**2 * (1.0 - t_v) + kw * t_c - 2.0 * k * r) / (2.0 * k * t_r * r**2)
        span_min_h = min(h2b, h1a)

    return {
        "adopt_h_max": adopt_h_max,
        "collapse_h_max": collapse_h_max,
        "collapse_r_min": collapse_r_min,
        "span_min_r": span_min_r,
        "span_min_h": span_min_h,
    }


def _worker_aug_thresholds(p: ModelParams, r: float, h: float) -> dict[str, float | None]:
    k, w, t_c, t_v = p.k, p.w, p.t_c, p.t_v
    kw = k + 2.0 * w
    adopt_h_max = 1.0 - t_v / t_c
    saving = t_c - t_v - h * t_c  # expert time saved per AI-stretched task
    span_min_r = (kw * t_c - k) / (kw * saving) if saving != 0.0 else None
    span_min_h = (r * kw * (t_c - t_v) - kw * t_c + k) / (r * kw * t_c)
    return {
        "adopt_h_max": adopt_h_max,
        "span_min_r": span_min_r,
        "span_min_h": span_min_h,
    }


def _expert_auto_thresholds(p: ModelParams, r: float, h: float) -> dict[str, float | None]:
    k, w, t_c, t_v = p.k, p.w, p.t_c, p.t_v
    kw = k + 2.0 * w
    return {
        "adopt_h_max": 1.0 - t_v / t_c,
        "adopt_r_min": kw * (h * t_c + t_c + t_v) / (4.0 * k),
        "span_min_h": (k * r - kw * t_v) / (kw * t_c),
    }


def _expert_aug_thresholds(p: ModelParams, r: float, h: float) -> dict[str, float | None]:
    k, w, t_c = p.k, p.w, p.t_c
    kw = k + 2.0 * w
    return {
        # adoption requires h < r; the h-axis comparative statics run on (0, r)
        "adopt_h_max": r,
        "span_min_r": (t_c * kw * (1.0 + h) - k) / (t_c * kw),
        "span_min_h": (k - t_c * kw * (1.0 - r)) / (t_c * kw),
    }


# ---------------------------------------------------------------------------
# solvers

def baseline_x(p: ModelParams) -> float:
    """Optimal pre-AI worker knowledge level (k+2w)t_c / 2k."""
    return p.worker_wage_coeff * p.t_c / (2.0 * p.k)


def _design(p: ModelParams, x: float, worker_demand: float, expert_demand: float,
            profit: float, y: float = 1.0) -> OrgDesign:
    collapsed = expert_demand == 0.0
    span = None if collapsed else worker_demand / expert_demand
    return OrgDesign(
        x_star=x,
        y_star=y,
        worker_demand=worker_demand,
        expert_demand=expert_demand,
        span=span,
        profit=profit,
        collapsed=collapsed,
    )


def baseline_solve(params: ModelParams) -> SolveResult:
    """Pre-AI optimum: interior worker knowledge level, guaranteed in (0, 1)
    by the communication-cost bound."""
    p = validate_params(params, Mode.BASELINE)
    x0 = baseline_x(p)
    expert_demand = (1.0 - x0) * p.t_c
    design = _design(p, x0, 1.0, expert_demand, float(pi_baseline(p, x0)))
    return SolveResult(
        mode=Mode.BASELINE,
        params=p,
        config=DeploymentConfig(Mode.BASELINE),
        design=design,
        adoption=None,
        thresholds=ThresholdBundle(Mode.BASELINE, {}),
        x_candidate=x0,
        regime="baseline",
    )


def _resolve(mode: Mode, p: ModelParams, config: DeploymentConfig,
             candidate: OrgDesign, base: SolveResult, bundle: ThresholdBundle,
             binding_ok: str, binding_fail: str, regime: str) -> SolveResult:
    """Assemble a SolveResult from the mode-optimal candidate design: adopt iff
    it beats the pre-AI optimum by more than the tie tolerance."""
    adopt = candidate.profit - base.design.profit > ADOPTION_TIE_TOL
    decision = AdoptionDecision(
        adopt=adopt,
        binding_constraint=binding_ok if adopt else binding_fail,
        profit_with=candidate.profit,
        profit_without=base.design.profit,
    )
    return SolveResult(
        mode=mode,
        params=p,
        config=config,
        design=candidate if adopt else base.design,
        adoption=decision,
        thresholds=bundle,
        x_candidate=candidate.x_star,
        regime=regime if adopt else "not-adopted",
    )


def worker_auto_solve(params: ModelParams, r_t: float, h: float) -> SolveResult:
    """AI executes tasks in [0, r_t]; workers validate every AI task and rework
    detected hallucinations, so hires must satisfy x >= r_t.

    Collapse is tested first (h below the collapse ceiling with capability
    beyond the collapse floor forces x* = 1 and an expert-free single layer);
    otherwise the interior optimum is clamped to [r_t, 1].
    """
    p = validate_params(params, Mode.WORKER_AUTO)
    check_unit_open("r_t", r_t)
    check_unit_open("h", h)
    base = baseline_solve(p)
    config = DeploymentConfig(Mode.WORKER_AUTO, r=r_t, h=h)
    values = _worker_auto_thresholds(p, r_t, h)
    bundle = ThresholdBundle(Mode.WORKER_AUTO, values)

    demand = worker_auto_demand(p, r_t, h)
    h0, r0 = values["collapse_h_max"], values["collapse_r_min"]
    if h0 is not None and r0 is not None and h < h0 and r_t >= r0:
        x_star = 1.0
        regime = "collapsed"
    else:
        x_star = max(r_t, min(1.0, base.design.x_star / demand))
        regime = "collapsed" if x_star >= 1.0 else (
            "skill-floor" if x_star == r_t else "interior"
        )
    profit = float(pi_worker_auto(p, r_t, h, x_star))
    candidate = _design(p, x_star, demand, (1.0 - x_star) * p.t_c, profit)
    return _resolve(
        Mode.WORKER_AUTO, p, config, candidate, base, bundle,
        "h < adopt_h_max", "h >= adopt_h_max", regime,
    )


def worker_aug_solve(params: ModelParams, r_g: float, h: float) -> SolveResult:
    """AI stretches each worker's reach to x + r_g(1-x); experts validate the
    stretched band and correct hallucinations there."""
    p = validate_params(params, Mode.WORKER_AUG)
    check_unit_open("r_g", r_g)
    check_unit_open("h", h)
    base = baseline_solve(p)
    config = DeploymentConfig(Mode.WORKER_AUG, r=r_g, h=h)
    bundle = ThresholdBundle(Mode.WORKER_AUG, _worker_aug_thresholds(p, r_g, h))

    x_unc = p.worker_wage_coeff * (
        r_g * p.t_v + (1.0 + r_g * h - r_g) * p.t_c
    ) / (2.0 * p.k)
    x_star = min(1.0, x_unc)
    profit = float(pi_worker_aug(p, r_g, h, x_star))
    expert_demand = (1.0 - x_star) * worker_aug_expert_coeff(p, r_g, h)
    candidate = _design(p, x_star, 1.0, expert_demand, profit)
    regime = "corner" if x_star >= 1.0 else "interior"
    return _resolve(
        Mode.WORKER_AUG, p, config, candidate, base, bundle,
        "h < adopt_h_max", "h >= adopt_h_max", regime,
    )


def expert_auto_solve(params: ModelParams, r_e: float, h: float) -> SolveResult:
    """AI answers escalations up to difficulty r_e; experts validate AI-guided
    work and handle the rest.  The profit map is piecewise: the AI-mediated
    branch below r_e and the pre-AI branch above; the global optimum compares
    both branch optima."""
    p = validate_params(params, Mode.EXPERT_AUTO)
    check_unit_open("r_e", r_e)
    check_unit_open("h", h)
    base = baseline_solve(p)
    config = DeploymentConfig(Mode.EXPERT_AUTO, r=r_e, h=h)
    bundle = ThresholdBundle(Mode.EXPERT_AUTO, _expert_auto_thresholds(p, r_e, h))

    x_unc = p.worker_wage_coeff * (p.t_v + h * p.t_c) / (2.0 * p.k)
    x_ai = min(max(x_unc, 0.0), r_e)
    profit_ai = float(pi_expert_auto(p, r_e, h, x_ai))
    x_plain = min(max(base.design.x_star, r_e), 1.0)
    profit_plain = float(pi_baseline(p, x_plain))

    if profit_ai > profit_plain:
        x_star, profit = x_ai, profit_ai
        expert_demand = float(expert_auto_demand(p, r_e, h, x_star))
        regime = "interior"
    else:
        x_star, profit = x_plain, profit_plain
        expert_demand = (1.0 - x_star) * p.t_c
        regime = "ai-idle"
    candidate = _design(p, x_star, 1.0, expert_demand, profit)

    h_ok = h < bundle["adopt_h_max"]
    fail = "h >= adopt_h_max" if not h_ok else "r <= adopt_r_min"
    return _resolve(
        Mode.EXPERT_AUTO, p, config, candidate, base, bundle,
        "h < adopt_h_max and r > adopt_r_min", fail, regime,
    )


def expert_aug_solve(params: ModelParams, r_u: float, h: float) -> SolveResult:
    """AI accelerates consultations to (1-r_u)t_c, with a manual-fallback
    consult on hallucination; adoption pays exactly when h < r_u."""
    p = validate_params(params, Mode.EXPERT_AUG)
    check_unit_open("r_u", r_u)
    check_unit_open("h", h)
    base = baseline_solve(p)
    config = DeploymentConfig(Mode.EXPERT_AUG, r=r_u, h=h)
    bundle = ThresholdBundle(Mode.EXPERT_AUG, _expert_aug_thresholds(p, r_u, h))

    x_unc = p.worker_wage_coeff * (1.0 - r_u + h) * p.t_c / (2.0 * p.k)
    x_star = min(1.0, x_unc)
    profit = float(pi_expert_aug(p, r_u, h, x_star))
    expert_demand = (1.0 - x_star) * expert_aug_consult(p, r_u, h)
    candidate = _design(p, x_star, 1.0, expert_demand, profit)
    regime = "corner" if x_star >= 1.0 else "interior"
    return _resolve(
        Mode.EXPERT_AUG, p, config, candidate, base, bundle,
        "h < adopt_h_max", "h >= adopt_h_max", regime,
    )


def solve(params: ModelParams, config: DeploymentConfig) -> SolveResult:
    """Dispatch to the solver for config.mode."""
    config = config.validated()
    if config.mode is Mode.BASELINE:
        return baseline_solve(params)
    assert config.r is not None and config.h is not None
    if config.mode is Mode.WORKER_AUTO:
        return worker_auto_solve(params, config.r, config.h)
    if config.mode is Mode.WORKER_AUG:
        return worker_aug_solve(params, config.r, config.h)
    if config.mode is Mode.EXPERT_AUTO:
        return expert_auto_solve(params, config.r, config.h)
    if config.mode is Mode.EXPERT_AUG:
        return expert_aug_solve(params, config.r, config.h)
    raise FeasibilityError(f"unsupported mode: {config.mode}")
