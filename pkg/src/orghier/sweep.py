"""Comparative-statics sweeps with deterministic CSV serialization.

One axis (a capability, hallucination rate, coupling coefficient, productivity
intensity, cost coefficient, or economy primitive) is varied over a strictly
increasing grid while everything else is held fixed; each grid point is solved
with whichever solver family the fixed values select (plain closed form,
coupled, productivity, or investment).  Output columns are fixed and ordered;
floats are rendered with 12 significant digits, '.' decimal separator, LF line
endings; a collapsed span serializes as the literal token ``collapsed``.
"""

from __future__ import annotations

import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from . import closed_form as cf
from . import extensions as ext
from .params import (
    DeploymentConfig,
    FeasibilityError,
    Mode,
    ModelParams,
    SolveResult,
)

__all__ = ["SweepSpec", "SweepRow", "SWEEP_COLUMNS", "run_sweep", "write_csv", "fmt"]

THREADS_ENV = "ORGHIER_THREADS"

SWEEP_COLUMNS = (
    "axis_value",
    "adopt",
    "x_star",
    "y_star",
    "span",
    "worker_demand",
    "expert_demand",
    "profit",
    "regime",
    "r_star",
    "h_star",
    "thresholds",
)

_PARAM_AXES = ("k", "w", "t_c")
_ALL_AXES = ("r", "h", "b", "A", "c_r", "c_h") + _PARAM_AXES


def fmt(value: float) -> str:
    """Fixed float rendering: 12 significant digits, locale-independent."""
    return format(float(value), ".12g")


@dataclass(frozen=True)
class SweepRow:
    """One evaluated grid point, already reduced to CSV-ready fields."""

    axis_value: float
    adopt: bool
    x_star: float
    y_star: float
    span: float | None
    worker_demand: float
    expert_demand: float
    profit: float
    regime: str
    r_star: float | None
    h_star: float | None
    thresholds: str

    def cells(self) -> list[str]:
        return [
            fmt(self.axis_value),
            "true" if self.adopt else "false",
            fmt(self.x_star),
            fmt(self.y_star),
            "collapsed" if self.span is None else fmt(self.span),
            fmt(self.worker_demand),
            fmt(self.expert_demand),
            fmt(self.profit),
            self.regime,
            "" if self.r_star is None else fmt(self.r_star),
            "" if self.h_star is None else fmt(self.h_star),
            self.thresholds,
        ]


@dataclass(frozen=True)
class SweepSpec:
    """A sweep: mode, fixed parameter record, fixed scenario values, and the
    varied axis with its grid."""

    mode: Mode
    params: ModelParams
    vary: str
    lo: float
    hi: float
    steps: int
    r: float | None = None
    h: float | None = None
    b: float | None = None
    A: float | None = None
    c_r: float | None = None
    c_h: float | None = None
    h_bar0: float | None = None

    def validated(self) -> "SweepSpec":
        if self.vary not in _ALL_AXES:
            raise FeasibilityError(
                f"unknown sweep axis {self.vary!r}; expected one of {', '.join(_ALL_AXES)}"
            )
        if not (np.isfinite(self.lo) and np.isfinite(self.hi) and self.lo < self.hi):
            raise FeasibilityError(
                f"grid must be strictly increasing: lo = {self.lo}, hi = {self.hi}"
            )
        if self.steps < 2:
            raise FeasibilityError(f"steps >= 2 violated: steps = {self.steps}")
        family = self.family()
        if self.mode is Mode.BASELINE and family != "plain":
            raise FeasibilityError("baseline sweeps only vary k, w, or t_c")
        if self.mode is Mode.BASELINE and self.vary in ("r", "h", "b", "A"):
            raise FeasibilityError(f"axis {self.vary!r} is invalid for baseline")
        if family == "productivity" and self.mode is not Mode.WORKER_AUG:
            raise FeasibilityError("productivity intensity applies to worker-aug only")
        if family == "dual" and self.mode not in (Mode.WORKER_AUTO, Mode.WORKER_AUG):
            raise FeasibilityError("dual investment sweeps support worker-level modes only")
        if family == "coupled" and (self.vary == "h" or self.h is not None):
            raise FeasibilityError("h is implied by the coupling; vary r or b instead")
        if family in ("invest", "dual") and self.vary == "r":
            raise FeasibilityError("capability is chosen by the firm under investment")
        if family == "coupled" and self.A is not None:
            raise FeasibilityError("coupling and productivity cannot be combined")
        if family in ("invest", "dual") and (self.b is not None or self.A is not None):
            raise FeasibilityError("investment sweeps cannot be combined with b or A")
        if family == "dual" and self.h is not None:
            raise FeasibilityError("h is chosen by the firm under dual investment")
        return self

    def family(self) -> str:
        # c_r alone selects capability investment; adding c_h makes it dual
        if self.c_h is not None or self.vary == "c_h":
            return "dual"
        if self.c_r is not None or self.vary == "c_r":
            return "invest"
        if self.b is not None or self.vary == "b":
            return "coupled"
        if self.A is not None or self.vary == "A":
            return "productivity"
        return "plain"


def _scenario(spec: SweepSpec, value: float) -> SweepRow:
    """Solve one grid point and reduce it to a row."""
    axis = spec.vary
    params = spec.params
    if axis in _PARAM_AXES:
        params = replace(params, **{axis: value})
    pick = lambda name, fixed: value if axis == name else fixed  # noqa: E731

    family = spec.family()
    if family == "plain":
        if spec.mode is Mode.BASELINE:
            result = cf.baseline_solve(params)
        else:
            result = cf.solve(
                params,
                DeploymentConfig(spec.mode, r=pick("r", spec.r), h=pick("h", spec.h)),
            )
        return _row_from_solve(value, result)
    if family == "coupled":
        result = ext.coupled_solve(
            params, spec.mode, r=pick("r", spec.r), b=pick("b", spec.b)
        )
        return _row_from_solve(value, result)
    if family == "productivity":
        cfg = ext.ProductivityConfig(
            r_g=pick("r", spec.r), h=pick("h", spec.h), A=pick("A", spec.A)
        )
        return _row_from_solve(value, ext.productivity_solve(params, cfg))
    if family == "invest":
        design = ext.capability_invest_solve(
            params, spec.mode, c_r=pick("c_r", spec.c_r), h=pick("h", spec.h)
        )
        return _row_from_invest(value, design)
    costs = ext.InvestmentCosts(
        c_r=pick("c_r", spec.c_r),
        c_h=pick("c_h", spec.c_h),
        h_bar0=spec.h_bar0 if spec.h_bar0 is not None else 0.0,
    )
    return _row_from_invest(value, ext.dual_invest_solve(params, spec.mode, costs))


def _row_from_solve(value: float, result: SolveResult) -> SweepRow:
    d = result.design
    cfg = result.config
    return SweepRow(
        axis_value=value,
        adopt=result.adopted,
        x_star=d.x_star,
        y_star=d.y_star,
        span=d.span,
        worker_demand=d.worker_demand,
        expert_demand=d.expert_demand,
        profit=d.profit,
        regime=result.regime,
        r_star=cfg.r if isinstance(cfg, DeploymentConfig) else None,
        h_star=cfg.h if isinstance(cfg, DeploymentConfig) else None,
        thresholds=result.thresholds.as_text(),
    )


def _row_from_invest(value: float, inv: "ext.InvestmentDesign") -> SweepRow:
    d = inv.design
    return SweepRow(
        axis_value=value,
        adopt=inv.adoption.adopt,
        x_star=d.x_star,
        y_star=d.y_star,
        span=d.span,
        worker_demand=d.worker_demand,
        expert_demand=d.expert_demand,
        profit=inv.net_profit,
        regime="invest" if inv.adoption.adopt else "not-adopted",
        r_star=inv.r_star,
        h_star=inv.h_star,
        thresholds=inv.thresholds.as_text(),
    )


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(int(raw), 1)
    except ValueError:
        return 1


def run_sweep(spec: SweepSpec, threads: int | None = None) -> list[SweepRow]:
    """Evaluate every grid point in ascending axis order.

    Points are independent pure solves, so they may be computed by a thread
    pool; rows are returned in grid order regardless of scheduling.
    """
    spec = spec.validated()
    grid = np.linspace(spec.lo, spec.hi, spec.steps)
    workers = default_threads() if threads is None else max(threads, 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda v: _scenario(spec, float(v)), grid))
    return [_scenario(spec, float(v)) for v in grid]


def render_csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(cells) for cells in rows)
    return "\n".join(lines) + "\n"


def write_csv(text: str, out: str | None) -> None:
    """Write CSV text to a path (atomically: temp file + rename) or stdout."""
    if out is None:
        import sys

        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def sweep_csv(spec: SweepSpec, threads: int | None = None) -> str:
    rows = run_sweep(spec, threads=threads)
    return render_csv(SWEEP_COLUMNS, (r.cells() for r in rows))
