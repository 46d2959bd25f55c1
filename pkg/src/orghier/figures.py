"""Figure-dataset catalog: every plotted curve regenerated from its exact
caption parameters as a deterministic CSV.

Each entry pins the full parameter record, the swept axis, and a fixed grid,
so regenerating a dataset twice yields byte-identical files.  Reference
curves (the pre-AI optimum x0_star / span0) are included wherever the source
panel draws them.  Rendering is a separate concern (see plots.py): the
datasets themselves are plain CSV.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import closed_form as cf
from . import extensions as ext
from .params import DeploymentConfig, FeasibilityError, Mode, ModelParams
from .sweep import fmt, render_csv

__all__ = ["FigureSpec", "catalog", "figure_csv", "figure_ids"]


@dataclass(frozen=True)
class FigureSpec:
    """One reproducible dataset: caption parameters plus a fixed sweep grid."""

    figure_id: str
    description: str
    kind: str  # x | span | xspan | invest | dual | expertk
    mode: Mode
    params: ModelParams
    axis: str
    lo: float
    hi: float
    steps: int
    fixed: dict = field(default_factory=dict)
    note: str = ""

    def columns(self) -> tuple[str, ...]:
        by_kind = {
            "x": (self.axis, "adopt", "x_star", "x0_star"),
            "span": (self.axis, "adopt", "span", "span0"),
            "xspan": (self.axis, "adopt", "x_star", "span", "x0_star", "span0"),
            "invest": (self.axis, "adopt", "r_star", "x_star", "span", "x0_star", "span0"),
            "dual": (self.axis, "adopt", "h_star", "r_star", "x_star", "span", "x0_star", "span0"),
            "expertk": (self.axis, "adopt", "x_star", "y_star"),
        }
        return by_kind[self.kind]

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)

    def axis_key(self) -> str:
        return _axis_key(self.axis)


def _span_cell(span: float | None) -> str:
    return "collapsed" if span is None else fmt(span)


def _solve_point(spec: FigureSpec, value: float):
    """Solve one grid point of a plain/coupled/productivity figure."""
    fx = dict(spec.fixed)
    fx[spec.axis_key()] = value
    params = spec.params
    if spec.axis in ("k", "w", "t_c"):
        from dataclasses import replace

        params = replace(params, **{spec.axis: value})
    if "b" in fx:
        return ext.coupled_solve(params, spec.mode, r=fx["r"], b=fx["b"])
    if "A" in fx:
        return ext.productivity_solve(
            params, ext.ProductivityConfig(r_g=fx["r"], h=fx["h"], A=fx["A"])
        )
    if spec.mode is Mode.BASELINE:
        return cf.baseline_solve(params)
    return cf.solve(params, DeploymentConfig(spec.mode, r=fx.get("r"), h=fx.get("h")))


def _axis_key(axis: str) -> str:
    return {"r_t": "r", "r_g": "r", "r_e": "r", "r_u": "r"}.get(axis, axis)


def generate(spec: FigureSpec) -> list[list[str]]:
    rows: list[list[str]] = []
    if spec.kind in ("x", "span", "xspan"):
        base = cf.baseline_solve(spec.params) if spec.axis not in ("k", "w", "t_c") else None
        for v in spec.grid():
            result = _solve_point(spec, float(v))
            b = base if base is not None else cf.baseline_solve(result.params)
            d = result.design
            cells = [fmt(v), "true" if result.adopted else "false"]
            if spec.kind == "x":
                cells += [fmt(d.x_star), fmt(b.design.x_star)]
            elif spec.kind == "span":
                cells += [_span_cell(d.span), _span_cell(b.design.span)]
            else:
                cells += [
                    fmt(d.x_star),
                    _span_cell(d.span),
                    fmt(b.design.x_star),
                    _span_cell(b.design.span),
                ]
            rows.append(cells)
        return rows
    if spec.kind in ("invest", "dual"):
        base = cf.baseline_solve(spec.params)
        for v in spec.grid():
            fx = dict(spec.fixed)
            fx[spec.axis_key()] = float(v)
            if spec.kind == "invest":
                inv = ext.capability_invest_solve(
                    spec.params, spec.mode, c_r=fx["c_r"], h=fx["h"]
                )
            else:
                inv = ext.dual_invest_solve(
                    spec.params,
                    spec.mode,
                    ext.InvestmentCosts(c_r=fx["c_r"], c_h=fx["c_h"], h_bar0=fx["h_bar0"]),
                )
            d = inv.design
            cells = [fmt(v), "true" if inv.adoption.adopt else "false"]
            if spec.kind == "dual":
                cells.append(fmt(inv.h_star))
            cells.extend(
                [
                    fmt(inv.r_star),
                    fmt(d.x_star),
                    _span_cell(d.span),
                    fmt(base.design.x_star),
                    _span_cell(base.design.span),
                ]
            )
            rows.append(cells)
        return rows
    if spec.kind == "expertk":
        for v in spec.grid():
            fx = dict(spec.fixed)
            fx[spec.axis_key()] = float(v)
            params = spec.params
            if spec.axis in ("k", "w", "t_c"):
                from dataclasses import replace

                params = replace(params, **{spec.axis: float(v)})
            if spec.mode is Mode.BASELINE:
                config = DeploymentConfig(Mode.BASELINE)
            else:
                config = DeploymentConfig(spec.mode, r=fx.get("r"), h=fx.get("h"))
            result = ext.expert_knowledge_solve(params, config)
            d = result.design
            rows.append(
                [
                    fmt(v),
                    "true" if result.adopted else "false",
                    fmt(d.x_star),
                    fmt(d.y_star),
                ]
            )
        return rows
    raise FeasibilityError(f"unknown figure kind {spec.kind!r}")


def figure_csv(figure_id: str) -> str:
    entries = catalog()
    if figure_id not in entries:
        raise KeyError(figure_id)
    spec = entries[figure_id]
    return render_csv(spec.columns(), generate(spec))


def figure_ids() -> list[str]:
    return list(catalog().keys())


def catalog() -> dict[str, FigureSpec]:
    """All figure datasets, keyed by identifier."""
    entries: list[FigureSpec] = []
    add = entries.append

    # -- worker-level automation: knowledge threshold vs capability ---------
    wauto_x = ModelParams(k=0.8, w=0.25, t_c=0.8, t_v=0.5, t_r=0.8)
    for fid, h in (("fig2a", 0.4), ("fig2b", 0.1)):
        add(FigureSpec(
            figure_id=fid,
            description=f"worker-auto knowledge threshold vs capability (h={h})",
            kind="x", mode=Mode.WORKER_AUTO, params=wauto_x,
            axis="r_t", lo=1e-3, hi=1.0 - 1e-3, steps=399, fixed={"h": h},
        ))

    # -- worker-level automation: span of control ---------------------------
    wauto_s = ModelParams(k=0.8, w=0.25, t_c=0.5, t_v=0.4, t_r=0.8)
    add(FigureSpec(
        figure_id="fig3a",
        description="worker-auto span vs capability (h=0.1)",
        kind="span", mode=Mode.WORKER_AUTO, params=wauto_s,
        axis="r_t", lo=1e-3, hi=1.0 - 1e-3, steps=399, fixed={"h": 0.1},
    ))
    add(FigureSpec(
        figure_id="fig3b",
        description="worker-auto span vs hallucination rate (r_t=0.4)",
        kind="span", mode=Mode.WORKER_AUTO, params=wauto_s,
        axis="h", lo=1e-3, hi=1.0 - 1e-3, steps=399, fixed={"r": 0.4},
    ))

    # -- expert-level automation: span of control ----------------------------
    eauto = ModelParams(k=0.8, w=0.25, t_c=0.8, t_v=0.3)
    add(FigureSpec(
        figure_id="fig4a",
        description="expert-auto span vs capability (h=0.1)",
        kind="span", mode=Mode.EXPERT_AUTO, params=eauto,
        axis="r_e", lo=1e-3, hi=1.0 - 1e-3, steps=399, fixed={"h": 0.1},
    ))
    add(FigureSpec(
        figure_id="fig4b",
        description="expert-auto span vs hallucination rate (r_e=0.8)",
        kind="span", mode=Mode.EXPERT_AUTO, params=eauto,
        axis="h", lo=1e-3, hi=1.0 - 1e-3, steps=399, fixed={"r": 0.8},
    ))

    # -- worker-level augmentation: span of control --------------------------
    waug = ModelParams(k=0.7, w=0.3, t_c=0.7, t_v=0.2)
    add(FigureSpec(
        figure_id="figA1a",
        description="worker-aug span vs capability (h=0.2)",
        kind="span", mode=Mode.WORKER_AUG, params=waug,
        axis="r_g", lo=1e-3, hi=1.0 - 1e-3, steps=399, fixed={"h": 0.2},
    ))
    add(FigureSpec(
        figure_id="figA1b",
        description="worker-aug span vs hallucination rate (r_g=0.5)",
        kind="span", mode=Mode.WORKER_AUG, params=waug,
        axis="h", lo=1e-3, hi=1.0 - 1e-3, steps=399, fixed={"r": 0.5},
    ))

    # -- expert-level augmentation: span of control --------------------------
    eaug = ModelParams(k=0.7, w=0.4, t_c=0.7)
    add(FigureSpec(
        figure_id="figA3a",
        description="expert-aug span vs capability (h=0.2)",
        kind="span", mode=Mode.EXPERT_AUG, params=eaug,
        axis="r_u", lo=1e-3, hi=1.0 - 1e-3, steps=399, fixed={"h": 0.2},
    ))
    add(FigureSpec(
        figure_id="figA3b",
        description="expert-aug span vs hallucination rate (r_u=0.5)",
        kind="span", mode=Mode.EXPERT_AUG, params=eaug,
        axis="h", lo=1e-3, hi=1.0 - 1e-3, steps=399, fixed={"r": 0.5},
        note="source panel labels the capability r_g; it is the consultation "
             "accelerator r_u here",
    ))

    # -- productivity extension ----------------------------------------------
    prodB = ModelParams(k=0.4, w=0.2, t_c=0.8, t_v=0.2)
    for tag, A in (("a", 0.2), ("b", 0.5), ("c", 0.8)):
        add(FigureSpec(
            figure_id=f"figB1{tag}",
            description=f"productivity-augmented knowledge threshold vs capability (A={A})",
            kind="x", mode=Mode.WORKER_AUG, params=prodB,
            axis="r_g", lo=1e-3, hi=1.0 - 1e-3, steps=199, fixed={"h": 0.1, "A": A},
        ))
        add(FigureSpec(
            figure_id=f"figB2{tag}",
            description=f"productivity-augmented span vs capability (A={A})",
            kind="span", mode=Mode.WORKER_AUG, params=prodB,
            axis="r_g", lo=1e-3, hi=1.0 - 1e-3, steps=199, fixed={"h": 0.1, "A": A},
        ))
    prodB3 = ModelParams(k=0.8, w=0.25, t_c=0.6, t_v=0.25)
    for tag, A in (("a", 0.2), ("b", 0.8)):
        add(FigureSpec(
            figure_id=f"figB3{tag}",
            description=f"productivity-augmented design vs hallucination rate (A={A})",
            kind="xspan", mode=Mode.WORKER_AUG, params=prodB3,
            axis="h", lo=1e-3, hi=1.0 - 1e-3, steps=199, fixed={"r": 0.5, "A": A},
        ))
    add(FigureSpec(
        figure_id="figB4",
        description="productivity-augmented design vs gain intensity",
        kind="xspan", mode=Mode.WORKER_AUG,
        params=ModelParams(k=0.4, w=0.2, t_c=0.6, t_v=0.3),
        axis="A", lo=0.0, hi=2.0, steps=201, fixed={"r": 0.3, "h": 0.2},
    ))

    # -- capability-reliability coupling -------------------------------------
    add(FigureSpec(
        figure_id="figC1",
        description="coupled worker-auto design vs capability (b=0.4)",
        kind="xspan", mode=Mode.WORKER_AUTO,
        params=ModelParams(k=0.8, w=0.25, t_c=0.5, t_v=0.3, t_r=0.8),
        axis="r_t", lo=1e-3, hi=1.0 - 1e-3, steps=199, fixed={"b": 0.4},
    ))
    coupled_p = ModelParams(k=0.7, w=0.3, t_c=0.6, t_v=0.4)
    add(FigureSpec(
        figure_id="figC2",
        description="coupled worker-aug design vs capability (b=0.5)",
        kind="xspan", mode=Mode.WORKER_AUG, params=coupled_p,
        axis="r_g", lo=1e-3, hi=1.0 - 1e-3, steps=199, fixed={"b": 0.5},
    ))
    add(FigureSpec(
        figure_id="figC3",
        description="coupled expert-auto design vs capability (b=0.5)",
        kind="xspan", mode=Mode.EXPERT_AUTO, params=coupled_p,
        axis="r_e", lo=1e-3, hi=1.0 - 1e-3, steps=199, fixed={"b": 0.5},
    ))

    # -- deployment cost ------------------------------------------------------
    # axis ranges are not stated by the source panels; the chosen windows
    # cover the documented regime shifts (no-investment through collapse)
    wauto_cost = ModelParams(k=1.3, w=0.5, t_c=0.3, t_v=0.3, t_r=0.8)
    add(FigureSpec(
        figure_id="figD1",
        description="worker-auto capability investment vs cost coefficient (h=0.2)",
        kind="invest", mode=Mode.WORKER_AUTO, params=wauto_cost,
        axis="c_r", lo=0.05, hi=1.2, steps=70, fixed={"h": 0.2},
    ))
    add(FigureSpec(
        figure_id="figD2",
        description="worker-auto dual investment vs capability cost coefficient",
        kind="dual", mode=Mode.WORKER_AUTO, params=wauto_cost,
        axis="c_r", lo=0.05, hi=1.2, steps=70,
        fixed={"c_h": 0.4, "h_bar0": 0.3},
    ))
    waug_cost = ModelParams(k=0.6, w=0.3, t_c=0.6, t_v=0.2)
    add(FigureSpec(
        figure_id="figD3",
        description="worker-aug capability investment vs cost coefficient (h=0.1)",
        kind="invest", mode=Mode.WORKER_AUG, params=waug_cost,
        axis="c_r", lo=0.16, hi=1.2, steps=70, fixed={"h": 0.1},
    ))
    add(FigureSpec(
        figure_id="figD4",
        description="worker-aug dual investment vs capability cost coefficient",
        kind="dual", mode=Mode.WORKER_AUG, params=waug_cost,
        axis="c_r", lo=0.08, hi=1.2, steps=70,
        fixed={"c_h": 0.05, "h_bar0": 0.4},
    ))
    add(FigureSpec(
        figure_id="figD5",
        description="worker-auto dual investment vs reliability cost coefficient",
        kind="dual", mode=Mode.WORKER_AUTO,
        params=ModelParams(k=0.7, w=0.6, t_c=0.3, t_v=0.4, t_r=0.8),
        axis="c_h", lo=0.005, hi=0.6, steps=70,
        fixed={"c_r": 0.7, "h_bar0": 0.35},
    ))
    add(FigureSpec(
        figure_id="figD6",
        description="worker-aug dual investment vs reliability cost coefficient",
        kind="dual", mode=Mode.WORKER_AUG, params=waug_cost,
        axis="c_h", lo=0.005, hi=0.6, steps=70,
        fixed={"c_r": 0.3, "h_bar0": 0.4},
    ))

    # -- endogenous expert knowledge ------------------------------------------
    # the k-sweep panels do not state the capability; fixed at 0.5 throughout
    ek_auto = ModelParams(k=1.0, w=0.2, t_c=0.5, t_v=0.3, t_r=0.8)
    add(FigureSpec(
        figure_id="figE1a",
        description="endogenous expert knowledge vs knowledge premium (worker-auto)",
        kind="expertk", mode=Mode.WORKER_AUTO, params=ek_auto,
        axis="k", lo=0.5, hi=5.0, steps=31, fixed={"r": 0.5, "h": 0.1},
        note="capability fixed at 0.5",
    ))
    add(FigureSpec(
        figure_id="figE1b",
        description="endogenous expert knowledge vs capability (worker-auto, k=3)",
        kind="expertk", mode=Mode.WORKER_AUTO,
        params=ModelParams(k=3.0, w=0.2, t_c=0.5, t_v=0.3, t_r=0.8),
        axis="r_t", lo=0.02, hi=0.98, steps=31, fixed={"h": 0.1},
    ))
    ek_aug = ModelParams(k=1.0, w=0.2, t_c=0.5, t_v=0.3)
    add(FigureSpec(
        figure_id="figE2a",
        description="endogenous expert knowledge vs knowledge premium (worker-aug)",
        kind="expertk", mode=Mode.WORKER_AUG, params=ek_aug,
        axis="k", lo=0.5, hi=5.0, steps=31, fixed={"r": 0.5, "h": 0.1},
        note="capability fixed at 0.5",
    ))
    add(FigureSpec(
        figure_id="figE2b",
        description="endogenous expert knowledge vs capability (worker-aug, k=3)",
        kind="expertk", mode=Mode.WORKER_AUG,
        params=ModelParams(k=3.0, w=0.2, t_c=0.5, t_v=0.3),
        axis="r_g", lo=0.02, hi=0.98, steps=31, fixed={"h": 0.1},
    ))
    add(FigureSpec(
        figure_id="figE3a",
        description="endogenous expert knowledge vs knowledge premium (expert-auto)",
        kind="expertk", mode=Mode.EXPERT_AUTO, params=ek_aug,
        axis="k", lo=0.5, hi=5.0, steps=31, fixed={"r": 0.5, "h": 0.1},
        note="capability fixed at 0.5",
    ))
    add(FigureSpec(
        figure_id="figE3b",
        description="endogenous expert knowledge vs knowledge premium (expert-aug)",
        kind="expertk", mode=Mode.EXPERT_AUG,
        params=ModelParams(k=1.0, w=0.2, t_c=0.5),
        axis="k", lo=0.5, hi=5.0, steps=31, fixed={"r": 0.5, "h": 0.1},
        note="capability fixed at 0.5",
    ))

    return {e.figure_id: e for e in entries}
