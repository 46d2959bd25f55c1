"""Monte Carlo task-flow simulator.

Replays each architecture's routing, validation, rework, and escalation rules
on tasks of Uniform[0,1] difficulty and accumulates exact labor times, so the
empirical means converge to the analytic time coefficients of the profit
functions.  The firm mandates validation, so output per task is exactly 1
under every mode.

Determinism: the task stream is split into fixed-size batches; batch i draws
from ``numpy.random.default_rng(SeedSequence((seed, i)))`` (PCG64), two
uniforms per task (difficulty, hallucination draw), and per-column sums are
reduced in batch order.  Identical configs therefore produce bitwise
identical reports on every platform, independent of how batches might be
scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import closed_form as cf
from .extensions import ProductivityConfig, productivity_worker_demand
from .params import (
    DeploymentConfig,
    FeasibilityError,
    Mode,
    ModelParams,
    OrgDesign,
    validate_params,
)

__all__ = ["SimConfig", "SimReport", "Moment", "run_simulation", "analytic_coefficients"]

BATCH_SIZE = 1 << 17


@dataclass(frozen=True)
class SimConfig:
    """One simulation scenario: economy primitives, the active architecture
    (plain or productivity-augmented), the design to operate at, task count,
    and the 64-bit stream seed."""

    params: ModelParams
    config: DeploymentConfig | ProductivityConfig
    design: OrgDesign
    n_tasks: int
    seed: int

    def validated(self) -> "SimConfig":
        if self.n_tasks < 1:
            raise FeasibilityError(f"n_tasks >= 1 violated: n_tasks = {self.n_tasks}")
        if self.seed < 0:
            raise FeasibilityError(f"seed >= 0 violated: seed = {self.seed}")
        mode = _mode_of(self.config)
        validate_params(self.params, mode)
        # unlike the closed-form solvers, the simulator accepts the h = 0
        # boundary: Bernoulli(0) streams are the degenerate-check case
        if isinstance(self.config, ProductivityConfig):
            r, h = self.config.r_g, self.config.h
            if not self.config.A >= 0.0:
                raise FeasibilityError(f"A >= 0 violated: A = {self.config.A}")
        else:
            r, h = self.config.r, self.config.h
        if mode is not Mode.BASELINE:
            if r is None or not 0.0 < r < 1.0:
                raise FeasibilityError(f"0 < r < 1 violated: r = {r}")
            if h is None or not 0.0 <= h < 1.0:
                raise FeasibilityError(f"0 <= h < 1 violated: h = {h}")
        x = self.design.x_star
        lo = 0.0
        if isinstance(self.config, DeploymentConfig) and mode is Mode.WORKER_AUTO:
            assert self.config.r is not None
            lo = self.config.r
        if not lo <= x <= 1.0:
            raise FeasibilityError(
                f"design x_star in [{lo}, 1] violated: x_star = {x}"
            )
        return self


@dataclass(frozen=True)
class Moment:
    """Sample mean and standard error; se is None for a single draw."""

    mean: float
    se: float | None


@dataclass(frozen=True)
class SimReport:
    """Per-task moments and event counts of one simulation run."""

    n_tasks: int
    worker_time: Moment
    expert_time: Moment
    output: Moment
    profit: Moment
    escalations: int
    validations: int
    hallucinations: int
    reworks: int


def _mode_of(config: DeploymentConfig | ProductivityConfig) -> Mode:
    if isinstance(config, ProductivityConfig):
        return Mode.WORKER_AUG
    return config.mode


def analytic_coefficients(
    params: ModelParams,
    config: DeploymentConfig | ProductivityConfig,
    x: float,
) -> tuple[float, float]:
    """Expected (worker time, expert time) per task at design x.

    These are exactly the labor coefficients of the mode's profit function,
    which is what the simulator's empirical means are checked against.
    """
    p = params
    if isinstance(config, ProductivityConfig):
        return (
            float(productivity_worker_demand(config, x)),
            (1.0 - x) * cf.worker_aug_expert_coeff(p, config.r_g, config.h),
        )
    mode, r, h = config.mode, config.r, config.h
    if mode is Mode.BASELINE:
        return 1.0, (1.0 - x) * p.t_c
    assert r is not None and h is not None
    if mode is Mode.WORKER_AUTO:
        return cf.worker_auto_demand(p, r, h), (1.0 - x) * p.t_c
    if mode is Mode.WORKER_AUG:
        return 1.0, (1.0 - x) * cf.worker_aug_expert_coeff(p, r, h)
    if mode is Mode.EXPERT_AUTO:
        if x <= r:
            return 1.0, float(cf.expert_auto_demand(p, r, h, x))
        return 1.0, (1.0 - x) * p.t_c
    return 1.0, (1.0 - x) * cf.expert_aug_consult(p, r, h)


def _route_batch(
    params: ModelParams,
    config: DeploymentConfig | ProductivityConfig,
    x: float,
    d: np.ndarray,
    u: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, int, int, int]:
    """Apply the mode's routing to one batch.

    Returns (worker time, expert time, escalations, validations,
    hallucinations) where an escalation is a task an expert must answer
    personally, a validation is an AI-processed task checked by a human, and
    a hallucination is a detected error on a validated task (each one
    triggers exactly one rework/correction).
    """
    p = params
    t_c = p.t_c

    if isinstance(config, ProductivityConfig):
        r, h, A = config.r_g, config.h, config.A
        hi = x + r * (1.0 - x)
        assisted = (d > x) & (d <= hi)
        beyond = d > hi
        bad = assisted & (u < h)
        worker = np.where(d <= x, 1.0 / (1.0 + r * A), 1.0)
        expert = np.where(assisted, p.t_v + np.where(u < h, t_c, 0.0), 0.0)
        expert = np.where(beyond, t_c, expert)
        return worker, expert, int(beyond.sum()), int(assisted.sum()), int(bad.sum())

    mode, r, h = config.mode, config.r, config.h
    if mode is Mode.BASELINE:
        consult = d > x
        worker = np.ones_like(d)
        expert = np.where(consult, t_c, 0.0)
        return worker, expert, int(consult.sum()), 0, 0

    assert r is not None and h is not None
    if mode is Mode.WORKER_AUTO:
        ai = d <= r
        bad = ai & (u < h)
        worker = np.where(ai, p.t_v + np.where(bad, p.t_r, 0.0), 1.0)
        consult = d > x
        expert = np.where(consult, t_c, 0.0)
        return worker, expert, int(consult.sum()), int(ai.sum()), int(bad.sum())

    if mode is Mode.WORKER_AUG:
        hi = x + r * (1.0 - x)
        assisted = (d > x) & (d <= hi)
        beyond = d > hi
        bad = assisted & (u < h)
        worker = np.ones_like(d)
        expert = np.where(assisted, p.t_v + np.where(bad, t_c, 0.0), 0.0)
        expert = np.where(beyond, t_c, expert)
        return worker, expert, int(beyond.sum()), int(assisted.sum()), int(bad.sum())

    if mode is Mode.EXPERT_AUTO:
        guided = (d > x) & (d <= r)
        beyond = d > r
        bad = guided & (u < h)
        worker = np.ones_like(d)
        expert = np.where(guided, p.t_v + np.where(bad, t_c, 0.0), 0.0)
        expert = np.where(beyond, t_c, expert)
        return worker, expert, int(beyond.sum()), int(guided.sum()), int(bad.sum())

    # expert augmentation: every escalation is AI-accelerated, with a manual
    # fallback consult when the AI answer was hallucinated
    consult = d > x
    bad = consult & (u < h)
    worker = np.ones_like(d)
    expert = np.where(consult, (1.0 - r) * t_c + np.where(bad, t_c, 0.0), 0.0)
    return worker, expert, int(consult.sum()), 0, int(bad.sum())


def run_simulation(cfg: SimConfig) -> SimReport:
    """Simulate cfg.n_tasks tasks and report per-task moments and counts."""
    cfg = cfg.validated()
    p = cfg.params
    x = cfg.design.x_star
    y = cfg.design.y_star
    wage_w = p.worker_wage(x)
    wage_e = p.expert_wage(y)

    n = cfg.n_tasks
    sums = np.zeros(3)    # worker, expert, profit
    sumsq = np.zeros(3)
    escalations = validations = hallucinations = 0

    done = 0
    batch_index = 0
    while done < n:
        m = min(BATCH_SIZE, n - done)
        rng = np.random.default_rng(np.random.SeedSequence((cfg.seed, batch_index)))
        d = rng.random(m)
        u = rng.random(m)
        worker, expert, esc, val, bad = _route_batch(p, cfg.config, x, d, u)
        profit = 1.0 - wage_w * worker - wage_e * expert
        for idx, col in enumerate((worker, expert, profit)):
            sums[idx] += float(col.sum())
            sumsq[idx] += float((col * col).sum())
        escalations += esc
        validations += val
        hallucinations += bad
        done += m
        batch_index += 1

    def moment(i: int) -> Moment:
        mean = sums[i] / n
        if n < 2:
            return Moment(mean=mean, se=None)
        var = max(sumsq[i] - n * mean * mean, 0.0) / (n - 1)
        return Moment(mean=mean, se=float(np.sqrt(var / n)))

    return SimReport(
        n_tasks=n,
        worker_time=moment(0),
        expert_time=moment(1),
        output=Moment(mean=1.0, se=0.0 if n > 1 else None),
        profit=moment(2),
        escalations=escalations,
        validations=validations,
        hallucinations=hallucinations,
        reworks=hallucinations,
    )
