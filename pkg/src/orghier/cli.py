"""Command-line surface: solve, sweep, figure, verify, simulate.

Exit codes: 0 ok, 1 internal error, 2 invalid input, 3 verification failure.
Parameters arrive via flags or a key=value config file ('#' starts a
comment); flags override file values.  CSV goes to --out (atomically) or to
stdout.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from . import closed_form as cf
from . import extensions as ext
from . import figures, simulate, sweep
from .oracle import verify_mode
from .params import (
    DeploymentConfig,
    DomainError,
    FeasibilityError,
    Mode,
    ModelParams,
    OrgDesign,
    SolveResult,
)

X_DEV_LIMIT = 1e-4
PROFIT_DEV_LIMIT = 1e-8

_CONFIG_KEYS = {
    "mode", "k", "w", "tc", "tv", "tr", "r", "h", "b", "A", "cr", "ch", "h0",
    "x", "y",
}


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise FeasibilityError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise FeasibilityError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = val
    return values


def _merge_config(args: argparse.Namespace) -> None:
    """Fill unset flags from the config file; flags win."""
    if not getattr(args, "config", None):
        return
    file_values = _read_config_file(args.config)
    for key, val in file_values.items():
        attr = {"h0": "h_bar0", "cr": "c_r", "ch": "c_h"}.get(key, key)
        if getattr(args, attr, None) is None:
            if attr == "mode":
                setattr(args, attr, val)
            else:
                setattr(args, attr, float(val))


def _params_from(args: argparse.Namespace) -> ModelParams:
    missing = [name for name in ("k", "w", "tc") if getattr(args, name, None) is None]
    if missing:
        raise FeasibilityError(f"missing required parameter(s): {', '.join(missing)}")
    return ModelParams(k=args.k, w=args.w, t_c=args.tc, t_v=args.tv, t_r=args.tr)


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value parameter file; flags override")
    parser.add_argument("--k", type=float, help="knowledge premium")
    parser.add_argument("--w", type=float, help="price of one unit of work time")
    parser.add_argument("--tc", type=float, help="communication cost per consultation")
    parser.add_argument("--tv", type=float, help="validation time per AI task")
    parser.add_argument("--tr", type=float, help="rework time per detected hallucination")


def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r", type=float, help="capability of the active mode")
    parser.add_argument("--h", type=float, help="hallucination rate")
    parser.add_argument("--b", type=float, help="coupling coefficient (h = b(1-r))")
    parser.add_argument("--A", type=float, help="productivity gain intensity")
    parser.add_argument("--cr", dest="c_r", type=float, help="capability cost coefficient")
    parser.add_argument("--ch", dest="c_h", type=float, help="reliability cost coefficient")
    parser.add_argument("--h0", dest="h_bar0", type=float,
                        help="baseline hallucination rate without investment")


SOLVE_COLUMNS = ("mode",) + sweep.SWEEP_COLUMNS[1:]


def _solve_row_cells(mode: Mode, row: sweep.SweepRow) -> list[str]:
    return [mode.value] + row.cells()[1:]


def _solve_scenario(args: argparse.Namespace):
    """Dispatch a single scenario exactly like one sweep grid point."""
    mode = Mode.parse(args.mode)
    params = _params_from(args)
    if args.c_h is not None:
        costs = ext.InvestmentCosts(
            c_r=args.c_r if args.c_r is not None else 0.0,
            c_h=args.c_h,
            h_bar0=args.h_bar0 if args.h_bar0 is not None else 0.0,
        )
        return mode, sweep._row_from_invest(0.0, ext.dual_invest_solve(params, mode, costs))
    if args.c_r is not None:
        if args.h is None:
            raise FeasibilityError("capability investment requires --h")
        inv = ext.capability_invest_solve(params, mode, c_r=args.c_r, h=args.h)
        return mode, sweep._row_from_invest(0.0, inv)
    if args.b is not None:
        if args.r is None:
            raise FeasibilityError("coupling requires --r")
        return mode, sweep._row_from_solve(0.0, ext.coupled_solve(params, mode, r=args.r, b=args.b))
    if args.A is not None:
        if args.r is None or args.h is None:
            raise FeasibilityError("productivity requires --r and --h")
        cfg = ext.ProductivityConfig(r_g=args.r, h=args.h, A=args.A)
        return mode, sweep._row_from_solve(0.0, ext.productivity_solve(params, cfg))
    if mode is Mode.BASELINE:
        return mode, sweep._row_from_solve(0.0, cf.baseline_solve(params))
    if args.r is None or args.h is None:
        raise FeasibilityError(f"mode {mode.value} requires --r and --h")
    return mode, sweep._row_from_solve(
        0.0, cf.solve(params, DeploymentConfig(mode, r=args.r, h=args.h))
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    mode, row = _solve_scenario(args)
    span = "collapsed" if row.span is None else f"{row.span:.6f}"
    print(f"mode:            {mode.value}")
    print(f"adopt:           {'true' if row.adopt else 'false'}")
    print(f"regime:          {row.regime}")
    print(f"x_star:          {row.x_star:.6f}")
    print(f"y_star:          {row.y_star:.6f}")
    print(f"worker_demand:   {row.worker_demand:.6f}")
    print(f"expert_demand:   {row.expert_demand:.6f}")
    print(f"span:            {span}")
    print(f"profit:          {row.profit:.6f}")
    if row.r_star is not None:
        print(f"capability:      {row.r_star:.6f}")
    if row.h_star is not None:
        print(f"hallucination:   {row.h_star:.6f}")
    if row.thresholds:
        print(f"thresholds:      {row.thresholds}")
    text = sweep.render_csv(SOLVE_COLUMNS, [_solve_row_cells(mode, row)])
    if args.out:
        sweep.write_csv(text, args.out)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    mode = Mode.parse(args.mode)
    params = _params_from(args)
    spec = sweep.SweepSpec(
        mode=mode, params=params, vary=args.vary, lo=args.lo, hi=args.hi,
        steps=args.steps, r=args.r, h=args.h, b=args.b, A=args.A,
        c_r=args.c_r, c_h=args.c_h, h_bar0=args.h_bar0,
    )
    text = sweep.sweep_csv(spec)
    sweep.write_csv(text, args.out)
    if args.plot:
        if not args.out:
            raise FeasibilityError("--plot requires --out")
        from .plots import render_csv_plot

        render_csv_plot(text, args.out + ".png", title=f"{mode.value} sweep over {args.vary}")
    return 0


def _cmd_figure(args: argparse.Namespace) -> int:
    entries = figures.catalog()
    if args.list:
        for fid, spec in entries.items():
            print(f"{fid}: {spec.description}")
        return 0
    if args.id is None:
        raise FeasibilityError("missing --id (or use --list)")
    if args.id not in entries:
        raise FeasibilityError(
            f"unknown figure id {args.id!r}; use --list to see the catalog"
        )
    text = figures.figure_csv(args.id)
    sweep.write_csv(text, args.out)
    if args.plot:
        if not args.out:
            raise FeasibilityError("--plot requires --out")
        from .plots import render_csv_plot

        render_csv_plot(text, args.out + ".png", title=entries[args.id].description)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise FeasibilityError(f"n >= 1 violated: n = {args.n}")
    mode = Mode.parse(args.mode)
    report = verify_mode(mode, n=args.n, seed=args.seed)
    ok = (
        report.max_x_deviation <= X_DEV_LIMIT
        and report.max_profit_deviation <= PROFIT_DEV_LIMIT
    )
    print(f"mode:                 {report.mode.value}")
    print(f"samples:              {report.sample_count}")
    print(f"max_x_deviation:      {report.max_x_deviation:.3e}  (limit {X_DEV_LIMIT:.0e})")
    print(f"max_profit_deviation: {report.max_profit_deviation:.3e}  (limit {PROFIT_DEV_LIMIT:.0e})")
    print(f"result:               {'PASS' if ok else 'FAIL'}")
    if not ok:
        print(f"worst case: {report.worst_case_params}")
        return 3
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    mode = Mode.parse(args.mode)
    params = _params_from(args)
    config: DeploymentConfig | ext.ProductivityConfig
    if args.A is not None:
        if args.r is None or args.h is None:
            raise FeasibilityError("productivity simulation requires --r and --h")
        config = ext.ProductivityConfig(r_g=args.r, h=args.h, A=args.A)
    elif mode is Mode.BASELINE:
        config = DeploymentConfig(Mode.BASELINE)
    else:
        if args.r is None or args.h is None:
            raise FeasibilityError(f"mode {mode.value} requires --r and --h")
        config = DeploymentConfig(mode, r=args.r, h=args.h)

    if args.x is None:
        if isinstance(config, ext.ProductivityConfig):
            solved = ext.productivity_solve(params, config)
        elif mode is Mode.BASELINE:
            solved = cf.baseline_solve(params)
        else:
            solved = cf.solve(params, config)
        x = solved.design.x_star
    else:
        x = args.x
    y = args.y if args.y is not None else 1.0

    wc, ec = simulate.analytic_coefficients(params, config, x)
    profit_target = 1.0 - params.worker_wage(x) * wc - params.expert_wage(y) * ec
    design = OrgDesign(
        x_star=x, y_star=y, worker_demand=wc, expert_demand=ec,
        span=None if ec == 0.0 else wc / ec, profit=profit_target,
        collapsed=ec == 0.0,
    )
    report = simulate.run_simulation(
        simulate.SimConfig(params=params, config=config, design=design,
                           n_tasks=args.n_tasks, seed=args.seed)
    )

    lines = []
    header = f"{'metric':<14}{'mean':>16}{'se':>14}{'target':>16}  verdict"
    print(header)
    for name, moment, target in (
        ("worker_time", report.worker_time, wc),
        ("expert_time", report.expert_time, ec),
        ("output", report.output, 1.0),
        ("profit", report.profit, profit_target),
    ):
        if moment.se is None:
            verdict = "NA"
            se_txt = "na"
        elif moment.se == 0.0:
            verdict = "PASS" if moment.mean == target else "FAIL"
            se_txt = "0"
        else:
            verdict = "PASS" if abs(moment.mean - target) <= 4.0 * moment.se else "FAIL"
            se_txt = f"{moment.se:.3e}"
        print(f"{name:<14}{moment.mean:>16.8f}{se_txt:>14}{target:>16.8f}  {verdict}")
        lines.append([name, sweep.fmt(moment.mean),
                      "" if moment.se is None else sweep.fmt(moment.se),
                      sweep.fmt(target), verdict])
    for name, count in (
        ("escalations", report.escalations),
        ("validations", report.validations),
        ("hallucinations", report.hallucinations),
        ("reworks", report.reworks),
    ):
        print(f"{name:<14}{count:>16d}")
        lines.append([name, str(count), "", "", ""])
    if args.out:
        text = sweep.render_csv(("metric", "mean", "se", "target", "verdict"), lines)
        sweep.write_csv(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orghier",
        description="Optimal two-layer knowledge hierarchies under AI deployment",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one scenario")
    p_solve.add_argument("--mode", required=True)
    _add_param_flags(p_solve)
    _add_scenario_flags(p_solve)
    p_solve.add_argument("--out", help="CSV output path (default: stdout)")
    p_solve.set_defaults(func=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="sweep one axis, emit CSV")
    p_sweep.add_argument("--mode", required=True)
    _add_param_flags(p_sweep)
    _add_scenario_flags(p_sweep)
    p_sweep.add_argument("--vary", required=True,
                         help="axis: r, h, b, A, c_r, c_h, k, w, or t_c")
    p_sweep.add_argument("--lo", type=float, required=True)
    p_sweep.add_argument("--hi", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--out", help="CSV output path (default: stdout)")
    p_sweep.add_argument("--plot", action="store_true",
                         help="also render <out>.png with matplotlib")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig = sub.add_parser("figure", help="regenerate a catalog figure dataset")
    p_fig.add_argument("--id", help="figure identifier (see --list)")
    p_fig.add_argument("--list", action="store_true", help="list the catalog")
    p_fig.add_argument("--out", help="CSV output path (default: stdout)")
    p_fig.add_argument("--plot", action="store_true",
                       help="also render <out>.png with matplotlib")
    p_fig.set_defaults(func=_cmd_figure)

    p_verify = sub.add_parser("verify", help="closed form vs numeric oracle")
    p_verify.add_argument("--mode", required=True)
    p_verify.add_argument("--n", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=_cmd_verify)

    p_sim = sub.add_parser("simulate", help="Monte Carlo task-flow simulation")
    p_sim.add_argument("--mode", required=True)
    _add_param_flags(p_sim)
    _add_scenario_flags(p_sim)
    p_sim.add_argument("--x", type=float, help="worker knowledge level (default: solved optimum)")
    p_sim.add_argument("--y", type=float, help="expert knowledge level (default: 1)")
    p_sim.add_argument("--n-tasks", type=int, default=1_000_000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", help="CSV report path")
    p_sim.set_defaults(func=_cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on flag errors and 0 on --help
        return int(exc.code or 0)
    try:
        _merge_config(args)
        return args.func(args)
    except (FeasibilityError, DomainError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
