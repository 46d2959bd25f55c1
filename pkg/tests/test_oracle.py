"""Oracle behavior: grid-plus-golden optimizers and solver verification."""

import numpy as np
import pytest

from orghier import (
    DeploymentConfig,
    DomainError,
    InfeasibleError,
    Mode,
    ModelParams,
    ScalarProblem,
    maximize_pair,
    maximize_scalar,
    profit_eval,
    verify_mode,
)


def test_symmetric_quadratic():
    x, v = maximize_scalar(ScalarProblem(lambda t: -((t - 0.3) ** 2), 0.0, 1.0, 1e-8))
    assert x == pytest.approx(0.3, abs=1e-8)
    assert v == pytest.approx(0.0, abs=1e-14)


def test_strictly_increasing_returns_endpoint_exactly():
    x, v = maximize_scalar(ScalarProblem(lambda t: t, 0.0, 1.0))
    assert x == 1.0 and v == 1.0


def test_flat_objective_breaks_ties_to_lowest_x():
    x, _ = maximize_scalar(ScalarProblem(lambda t: 0.0 * t, 0.25, 0.75))
    assert x == 0.25


def test_baseline_profit_argmax_matches_formula():
    params = ModelParams(k=0.8, w=0.25, t_c=0.8)
    config = DeploymentConfig(Mode.BASELINE)
    x, _ = maximize_scalar(
        ScalarProblem(lambda t: profit_eval(params, config, t), 0.0, 1.0)
    )
    assert x == pytest.approx(0.65, abs=1e-6)


def test_invalid_interval_rejected():
    with pytest.raises(DomainError):
        maximize_scalar(ScalarProblem(lambda t: t, 1.0, 0.0))


@pytest.mark.parametrize("curv,center", [(-1.0, 0.2), (-3.5, 0.77), (-0.2, 0.5)])
def test_concave_argmax_has_vanishing_derivative(curv, center):
    f = lambda t: curv * (t - center) ** 2  # noqa: E731
    x, _ = maximize_scalar(ScalarProblem(f, 0.0, 1.0))
    step = 1e-6
    fd = (f(x + step) - f(x - step)) / (2 * step)
    assert abs(fd) <= 1e-5


def test_doubling_grid_density_never_hurts():
    f = lambda t: np.sin(13.0 * t) + 0.4 * t  # noqa: E731 multi-modal
    _, v1 = maximize_scalar(ScalarProblem(f, 0.0, 1.0), coarse=10001)
    _, v2 = maximize_scalar(ScalarProblem(f, 0.0, 1.0), coarse=20001)
    assert v2 >= v1 - 1e-10


def test_pair_separable():
    (x, y), _ = maximize_pair(
        lambda a, b: -((a - 0.3) ** 2) - (b - 0.7) ** 2,
        ((0.0, 1.0), (0.0, 1.0)),
        coarse=201,
    )
    assert x == pytest.approx(0.3, abs=1e-6)
    assert y == pytest.approx(0.7, abs=1e-6)


def test_pair_matches_endogenous_expert_benchmark():
    k, w, t_c = 0.8, 0.2, 0.5
    (x, y), _ = maximize_pair(
        lambda a, b: b - (w + 0.5 * k * a**2) - (w + 0.5 * k * b**2) * (1 - a) * t_c,
        ((0.0, 1.0), (0.0, 1.0)),
        constraint=lambda a, b: a <= b,
    )
    assert y == 1.0  # grid endpoint kept exactly
    assert x == pytest.approx(0.375, abs=1e-6)


def test_pair_constrained_ridge_sits_on_boundary():
    # unconstrained optimum (0.8, 0.2) violates x <= y; the constrained
    # argmax lies on the x = y line
    (x, y), _ = maximize_pair(
        lambda a, b: -((a - 0.8) ** 2) - (b - 0.2) ** 2,
        ((0.0, 1.0), (0.0, 1.0)),
        constraint=lambda a, b: a <= b,
        coarse=401,
    )
    assert abs(x - y) <= 5e-3
    assert x == pytest.approx(0.5, abs=5e-3)


def test_pair_infeasible_raises():
    with pytest.raises(InfeasibleError):
        maximize_pair(
            lambda a, b: a + b,
            ((0.0, 1.0), (0.0, 1.0)),
            constraint=lambda a, b: (a + b) < -1.0,
            coarse=51,
        )


def test_verify_mode_deterministic_with_degenerate_sampler():
    params = ModelParams(k=0.8, w=0.25, t_c=0.8, t_v=0.5, t_r=0.8)
    fixed = (params, DeploymentConfig(Mode.WORKER_AUTO, r=0.5, h=0.4))
    sampler = lambda rng: fixed  # noqa: E731
    a = verify_mode(Mode.WORKER_AUTO, sampler=sampler, n=5, seed=1)
    b = verify_mode(Mode.WORKER_AUTO, sampler=sampler, n=5, seed=1)
    assert a == b
    assert a.sample_count == 5
    assert a.max_x_deviation <= 1e-4


def test_verify_mode_rejects_empty_sample():
    with pytest.raises(DomainError):
        verify_mode(Mode.BASELINE, n=0)
