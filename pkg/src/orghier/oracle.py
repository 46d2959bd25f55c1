"""Independent numerical optimizers and brute-force verification.

Grid-then-refine was chosen over derivative methods because the profit maps
are piecewise (kinks at capability boundaries, clamps at 0 and 1): a dense
coarse grid guarantees the correct piece is found, and golden-section
refinement then resolves the optimum to tolerance.  Refined points are only
accepted on strict improvement, so grid optima that sit exactly on an
endpoint are returned exactly.  Ties break to the lowest x (then lowest y),
making every report reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import closed_form
from .params import DeploymentConfig, DomainError, Mode, ModelParams

__all__ = [
    "ScalarProblem",
    "VerificationReport",
    "InfeasibleError",
    "maximize_scalar",
    "maximize_pair",
    "verify_mode",
    "feasible_sampler",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


class InfeasibleError(ValueError):
    """No grid point satisfies the feasibility predicate."""


@dataclass(frozen=True)
class ScalarProblem:
    """A one-dimensional maximization over [lo, hi] to absolute x-tolerance tol."""

    objective: Callable[[float], float]
    lo: float
    hi: float
    tol: float = 1e-8


@dataclass(frozen=True)
class VerificationReport:
    """Worst-case deviations between a closed-form solver and the numeric
    oracle over a sample of feasible scenarios."""

    mode: Mode
    sample_count: int
    max_x_deviation: float
    max_profit_deviation: float
    worst_case_params: str


def _golden_max(f: Callable[[float], float], a: float, b: float, tol: float
                ) -> tuple[float, float]:
    """Golden-section maximization on [a, b]; returns the best point actually
    evaluated, keeping the left segment on ties so the lowest x wins."""
    span = b - a
    if span <= tol:
        xm = 0.5 * (a + b)
        return xm, f(xm)
    n = int(math.ceil(math.log(tol / span) / math.log(_INVPHI)))
    c = a + _INVPHI2 * span
    d = a + _INVPHI * span
    yc, yd = f(c), f(d)
    best_x, best_y = (c, yc) if yc >= yd else (d, yd)
    for _ in range(max(n - 1, 0)):
        if yc >= yd:
            b, d, yd = d, c, yc
            span *= _INVPHI
            c = a + _INVPHI2 * span
            yc = f(c)
            if yc > best_y:
                best_x, best_y = c, yc
        else:
            a, c, yc = c, d, yd
            span *= _INVPHI
            d = a + _INVPHI * span
            yd = f(d)
            if yd > best_y:
                best_x, best_y = d, yd
    return best_x, best_y


def _eval_grid(objective, xs: np.ndarray) -> np.ndarray:
    """Evaluate objective on a grid, vectorized when the callable broadcasts."""
    try:
        vals = np.asarray(objective(xs), dtype=float)
        if vals.shape == xs.shape:
            return vals
    except Exception:
        pass
    return np.array([float(objective(float(x))) for x in xs])


def maximize_scalar(problem: ScalarProblem, coarse: int = 10001) -> tuple[float, float]:
    """Global scalar maximization: coarse grid (>= 10^4 points by default)
    plus golden-section refinement around the best cell.  Endpoint optima are
    returned exactly; interior refinements are accepted only when they beat
    the grid value."""
    if not (problem.lo < problem.hi) or not (
        math.isfinite(problem.lo) and math.isfinite(problem.hi)
    ):
        raise DomainError(f"invalid interval [{problem.lo}, {problem.hi}]")
    xs = np.linspace(problem.lo, problem.hi, coarse)
    vals = _eval_grid(problem.objective, xs)
    if not np.all(np.isfinite(vals)):
        raise DomainError("objective not finite on the search interval")
    i = int(np.argmax(vals))  # first maximum = lowest x
    best_x, best_y = float(xs[i]), float(vals[i])
    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, coarse - 1)])
    if a < b:
        gx, gy = _golden_max(lambda t: float(problem.objective(t)), a, b, problem.tol)
        if gy > best_y:
            best_x, best_y = gx, gy
    return best_x, best_y


def _feasible(constraint, x: float, y: float) -> bool:
    return True if constraint is None else bool(constraint(x, y))


def maximize_pair(
    objective: Callable[[float, float], float],
    box: tuple[tuple[float, float], tuple[float, float]],
    constraint: Callable[[float, float], bool] | None = None,
    tol: float = 1e-8,
    coarse: int = 1001,
    max_rounds: int = 60,
) -> tuple[tuple[float, float], float]:
    """Constrained 2-D maximization: coarse grid over the box intersected with
    the feasibility predicate, then coordinate-wise golden-section refinement
    iterated to joint tolerance.  Deterministic lowest-(x, y) tie-break.

    The objective and constraint are evaluated on meshgrids when they
    broadcast; otherwise point by point.
    """
    (xlo, xhi), (ylo, yhi) = box
    if not (xlo < xhi and ylo < yhi):
        raise DomainError(f"invalid box {box}")
    xs = np.linspace(xlo, xhi, coarse)
    ys = np.linspace(ylo, yhi, coarse)
    vals = None
    try:
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        V = np.asarray(objective(X, Y), dtype=float)
        if V.shape != X.shape:
            raise TypeError("objective does not broadcast")
        if constraint is not None:
            M = np.asarray(constraint(X, Y), dtype=bool)
            if M.shape != X.shape:
                raise TypeError("constraint does not broadcast")
            V = np.where(M, V, -np.inf)
        vals = V
    except (TypeError, ValueError):
        vals = np.full((coarse, coarse), -np.inf)
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                if _feasible(constraint, float(x), float(y)):
                    vals[i, j] = float(objective(float(x), float(y)))
    if not np.any(np.isfinite(vals)):
        raise InfeasibleError("no grid point satisfies the constraint")
    flat = int(np.argmax(vals))  # C order: lowest x index first, then lowest y
    i, j = divmod(flat, coarse)
    bx, by = float(xs[i]), float(ys[j])
    bv = float(vals[i, j])

    dx = float(xs[1] - xs[0])
    dy = float(ys[1] - ys[0])

    def g(x: float, y: float) -> float:
        if not _feasible(constraint, x, y):
            return -np.inf
        return float(objective(x, y))

    for _ in range(max_rounds):
        moved = 0.0
        nx, nv = _golden_max(
            lambda t: g(t, by), max(xlo, bx - dx), min(xhi, bx + dx), tol
        )
        if nv > bv:
            moved = max(moved, abs(nx - bx))
            bx, bv = nx, nv
        ny, nv = _golden_max(
            lambda t: g(bx, t), max(ylo, by - dy), min(yhi, by + dy), tol
        )
        if nv > bv:
            moved = max(moved, abs(ny - by))
            by, bv = ny, nv
        if moved < tol:
            break
    return (bx, by), bv


# ---------------------------------------------------------------------------
# solver-vs-oracle verification

def feasible_sampler(
    mode: Mode, adopted_only: bool = False, max_tries: int = 1000
) -> Callable[[np.random.Generator], tuple[ModelParams, DeploymentConfig]]:
    """Sampler of feasible (params, config) scenarios for a mode.

    Draws the economy primitives inside their assumption regions and, when
    adopted_only is set, rejects scenarios where adoption does not pay
    (capped resampling).
    """

    def draw(rng: np.random.Generator) -> tuple[ModelParams, DeploymentConfig]:
        for _ in range(max_tries):
            k = rng.uniform(0.3, 2.0)
            w = rng.uniform(0.05, 1.0)
            t_c = rng.uniform(0.05, 0.95) * (2.0 * k / (k + 2.0 * w))
            t_v = rng.uniform(0.05, 0.95)
            t_r = rng.uniform(max(1.0 - t_v, 0.01) + 1e-6, 0.999)
            params = ModelParams(k=k, w=w, t_c=t_c, t_v=t_v, t_r=t_r)
            if mode is Mode.BASELINE:
                return params, DeploymentConfig(Mode.BASELINE)
            r = rng.uniform(0.01, 0.99)
            h = rng.uniform(0.01, 0.99)
            config = DeploymentConfig(mode, r=r, h=h)
            if not adopted_only:
                return params, config
            if closed_form.solve(params, config).adopted:
                return params, config
        raise RuntimeError(f"sampler failed to find a feasible draw in {max_tries} tries")

    return draw


def verify_mode(
    mode: Mode,
    sampler: Callable[[np.random.Generator], tuple[ModelParams, DeploymentConfig]] | None = None,
    n: int = 1000,
    seed: int = 0,
) -> VerificationReport:
    """Compare the closed-form optimum against the brute-force oracle on the
    same profit map for n sampled scenarios; report worst-case deviations.
    Deterministic given the seed."""
    if n < 1:
        raise DomainError(f"sample count must be >= 1: n = {n}")
    if sampler is None:
        sampler = feasible_sampler(mode)
    rng = np.random.default_rng(seed)
    max_dx = 0.0
    max_dp = 0.0
    worst = ""
    for _ in range(n):
        params, config = sampler(rng)
        result = closed_form.solve(params, config)
        lo = closed_form.lower_bound(mode, config)
        ox, ov = maximize_scalar(
            ScalarProblem(
                objective=lambda x: closed_form.profit_eval(params, config, x),
                lo=lo,
                hi=1.0,
            )
        )
        profit_closed = (
            result.adoption.profit_with if result.adoption is not None
            else result.design.profit
        )
        dx = abs(result.x_candidate - ox)
        dp = abs(profit_closed - ov)
        if dx > max_dx or (dx == max_dx and dp > max_dp):
            worst = f"params={params}, config={config}"
        max_dx = max(max_dx, dx)
        max_dp = max(max_dp, dp)
    return VerificationReport(
        mode=mode,
        sample_count=n,
        max_x_deviation=max_dx,
        max_profit_deviation=max_dp,
        worst_case_params=worst,
    )
