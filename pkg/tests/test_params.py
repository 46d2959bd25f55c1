"""Parameter validation: feasibility gates, error wording, idempotence."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orghier import (
    DeploymentConfig,
    FeasibilityError,
    Mode,
    ModelParams,
    validate_params,
)


def test_figure_params_are_feasible_for_worker_auto():
    p = ModelParams(k=0.8, w=0.25, t_c=0.8, t_v=0.5, t_r=0.8)
    assert validate_params(p, Mode.WORKER_AUTO) is p
    assert p.tc_max == pytest.approx(1.6 / 1.3)
    assert p.tc_max > 0.8


def test_communication_cost_at_bound_is_rejected():
    p = ModelParams(k=1.0, w=0.5, t_c=1.0)
    with pytest.raises(FeasibilityError) as err:
        validate_params(p, Mode.BASELINE)
    msg = str(err.value)
    assert "t_c" in msg
    assert "1.0" in msg  # echoes both the offending value and the bound


def test_validation_plus_rework_must_exceed_manual_time():
    p = ModelParams(k=0.8, w=0.25, t_c=0.8, t_v=0.6, t_r=0.3)
    with pytest.raises(FeasibilityError) as err:
        validate_params(p, Mode.WORKER_AUTO)
    assert "t_v + t_r" in str(err.value)
    assert "0.9" in str(err.value)


def test_rework_time_not_validated_for_modes_that_ignore_it():
    # t_r is out of range but augmentation never reads it
    p = ModelParams(k=0.8, w=0.25, t_c=0.8, t_v=0.5, t_r=7.0)
    assert validate_params(p, Mode.WORKER_AUG) is p
    assert validate_params(p, Mode.EXPERT_AUG) is p
    with pytest.raises(FeasibilityError):
        validate_params(p, Mode.WORKER_AUTO)


def test_missing_validation_time_is_reported():
    p = ModelParams(k=0.8, w=0.25, t_c=0.8)
    with pytest.raises(FeasibilityError) as err:
        validate_params(p, Mode.EXPERT_AUTO)
    assert "t_v" in str(err.value)


@pytest.mark.parametrize("field,value", [("k", 0.0), ("k", -1.0), ("w", 0.0)])
def test_positive_primitives(field, value):
    base = dict(k=0.5, w=0.25, t_c=0.3)
    base[field] = value
    with pytest.raises(FeasibilityError) as err:
        validate_params(ModelParams(**base), Mode.BASELINE)
    assert field in str(err.value)


@given(
    k=st.floats(0.3, 2.0),
    w=st.floats(0.05, 1.0),
    frac=st.floats(0.05, 0.95),
    t_v=st.floats(0.05, 0.95),
    slack=st.floats(0.001, 0.04),
)
@settings(max_examples=60, deadline=None)
def test_validate_params_is_idempotent(k, w, frac, t_v, slack):
    t_r = min(1.0 - t_v + slack, 0.999)
    p = ModelParams(k=k, w=w, t_c=frac * 2 * k / (k + 2 * w), t_v=t_v, t_r=t_r)
    for mode in Mode:
        if mode is Mode.WORKER_AUTO and t_v + t_r <= 1.0:
            continue
        once = validate_params(p, mode)
        assert validate_params(once, mode) is once


def test_deployment_config_open_intervals():
    with pytest.raises(FeasibilityError):
        DeploymentConfig(Mode.WORKER_AUG, r=0.0, h=0.5).validated()
    with pytest.raises(FeasibilityError):
        DeploymentConfig(Mode.WORKER_AUG, r=0.5, h=1.0).validated()
    with pytest.raises(FeasibilityError):
        DeploymentConfig(Mode.BASELINE, r=0.5).validated()
    ok = DeploymentConfig(Mode.EXPERT_AUG, r=0.5, h=0.5)
    assert ok.validated() is ok


def test_mode_parse():
    assert Mode.parse("expert-auto") is Mode.EXPERT_AUTO
    with pytest.raises(FeasibilityError):
        Mode.parse("expert_auto")
