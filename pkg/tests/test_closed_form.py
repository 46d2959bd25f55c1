"""Closed-form solvers against frozen brute-force oracle values.

Expected numbers were computed once with step-1e-6 grid searches over each
mode's profit map (plus golden refinement) and frozen here; the live
solver-vs-oracle sweep is exercised in the acceptance suite.
"""

import numpy as np
import pytest

from orghier import (
    DeploymentConfig,
    DomainError,
    Mode,
    ModelParams,
    baseline_solve,
    expert_aug_solve,
    expert_auto_solve,
    profit_eval,
    worker_aug_solve,
    worker_auto_solve,
)

FIG2_PARAMS = ModelParams(k=0.8, w=0.25, t_c=0.8, t_v=0.5, t_r=0.8)


class TestProfitEval:
    def test_baseline_at_zero(self):
        p = ModelParams(k=0.8, w=0.25, t_c=0.8)
        assert profit_eval(p, DeploymentConfig(Mode.BASELINE), 0.0) == pytest.approx(
            0.23, abs=1e-12
        )

    def test_baseline_at_one_has_no_escalation_term(self):
        p = ModelParams(k=1.1, w=0.3, t_c=0.6)
        expected = 1.0 - (0.3 + 1.1 / 2.0)
        assert profit_eval(p, DeploymentConfig(Mode.BASELINE), 1.0) == pytest.approx(
            expected, abs=1e-12
        )

    def test_worker_auto_reduces_to_baseline_as_capability_vanishes(self):
        p = FIG2_PARAMS
        xs = np.linspace(1e-9, 1.0, 21)  # the mode's feasible interval is [r, 1]
        base = profit_eval(p, DeploymentConfig(Mode.BASELINE), xs)
        tiny = profit_eval(p, DeploymentConfig(Mode.WORKER_AUTO, r=1e-9, h=0.4), xs)
        assert np.allclose(base, tiny, atol=1e-8)

    def test_expert_aug_with_h_equal_r_matches_baseline_pointwise(self):
        p = ModelParams(k=0.7, w=0.4, t_c=0.7)
        xs = np.linspace(0.0, 1.0, 21)
        base = profit_eval(p, DeploymentConfig(Mode.BASELINE), xs)
        even = profit_eval(p, DeploymentConfig(Mode.EXPERT_AUG, r=0.3, h=0.3), xs)
        assert np.allclose(base, even, atol=1e-15)

    def test_below_lower_bound_rejected(self):
        with pytest.raises(DomainError):
            profit_eval(FIG2_PARAMS, DeploymentConfig(Mode.WORKER_AUTO, r=0.5, h=0.4), 0.3)


class TestBaseline:
    def test_reference_point(self):
        r = baseline_solve(ModelParams(k=0.8, w=0.25, t_c=0.8))
        assert r.design.x_star == pytest.approx(0.65, abs=1e-12)
        assert r.design.span == pytest.approx(25.0 / 7.0, abs=1e-9)
        assert r.design.worker_demand == 1.0
        assert r.design.expert_demand == pytest.approx(0.28, abs=1e-12)
        assert r.design.profit == pytest.approx(0.399, abs=1e-12)
        assert not r.design.collapsed

    def test_second_reference_point(self):
        r = baseline_solve(ModelParams(k=1.0, w=0.5, t_c=0.5))
        assert r.design.x_star == pytest.approx(0.5, abs=1e-12)

    def test_vanishing_communication_cost_limit(self):
        r = baseline_solve(ModelParams(k=1.0, w=0.5, t_c=1e-9))
        assert r.design.x_star < 1e-6
        assert r.design.expert_demand < 1e-6


class TestWorkerAuto:
    def test_adopted_interior_design(self):
        r = worker_auto_solve(FIG2_PARAMS, r_t=0.5, h=0.4)
        assert r.adopted
        assert r.thresholds["adopt_h_max"] == pytest.approx(0.625, abs=1e-12)
        assert r.design.x_star == pytest.approx(0.7142857142857143, abs=1e-9)
        assert r.design.worker_demand == pytest.approx(0.91, abs=1e-12)
        assert r.design.span == pytest.approx(3.98125, abs=1e-9)
        assert r.regime == "interior"

    def test_rejected_when_hallucinations_too_frequent(self):
        r = worker_auto_solve(FIG2_PARAMS, r_t=0.3, h=0.7)
        assert not r.adopted
        assert r.thresholds["adopt_h_max"] == pytest.approx((1 - 0.5) / 0.8)
        assert r.design.x_star == pytest.approx(0.65, abs=1e-12)  # baseline echoed
        assert r.adoption.profit_with <= r.adoption.profit_without + 1e-12

    def test_collapse_regime(self):
        r = worker_auto_solve(FIG2_PARAMS, r_t=0.9, h=0.1)
        assert r.adopted and r.design.collapsed
        assert r.design.x_star == 1.0
        assert r.design.expert_demand == 0.0
        assert r.design.span is None
        assert r.thresholds["collapse_h_max"] == pytest.approx(0.1875, abs=1e-12)
        assert r.thresholds["collapse_r_min"] == pytest.approx(0.8333333333, abs=1e-9)
        assert r.regime == "collapsed"

    def test_tiny_capability_converges_to_baseline(self):
        r = worker_auto_solve(FIG2_PARAMS, r_t=1e-7, h=0.4)
        assert r.design.x_star == pytest.approx(0.65, abs=1e-5)
        assert r.design.worker_demand == pytest.approx(1.0, abs=1e-6)


class TestWorkerAug:
    PARAMS = ModelParams(k=0.7, w=0.3, t_c=0.7, t_v=0.2)

    def test_adopted_design(self):
        r = worker_aug_solve(self.PARAMS, r_g=0.5, h=0.2)
        assert r.adopted
        assert r.thresholds["adopt_h_max"] == pytest.approx(1 - 0.2 / 0.7, abs=1e-12)
        assert r.design.x_star == pytest.approx(0.482857142857, abs=1e-9)
        assert r.design.x_star < 0.65  # deskilling vs the pre-AI threshold
        assert r.design.span == pytest.approx(3.7186570335741607, abs=1e-9)

    def test_rejected_above_reliability_ceiling(self):
        r = worker_aug_solve(self.PARAMS, r_g=0.5, h=0.75)
        assert not r.adopted
        assert r.design.x_star == pytest.approx(0.65, abs=1e-12)

    def test_tiny_capability_converges_to_baseline(self):
        r = worker_aug_solve(self.PARAMS, r_g=1e-9, h=0.2)
        assert r.design.x_star == pytest.approx(0.65, abs=1e-8)
        assert r.adoption.profit_with == pytest.approx(
            r.adoption.profit_without, abs=1e-9
        )


class TestExpertAuto:
    PARAMS = ModelParams(k=0.8, w=0.25, t_c=0.8, t_v=0.3)

    def test_adopted_design(self):
        r = expert_auto_solve(self.PARAMS, r_e=0.8, h=0.1)
        assert r.adopted
        assert r.thresholds["adopt_h_max"] == pytest.approx(0.625, abs=1e-12)
        assert r.thresholds["adopt_r_min"] == pytest.approx(0.479375, abs=1e-12)
        assert r.design.x_star == pytest.approx(0.30875, abs=1e-12)
        assert r.design.span == pytest.approx(2.8845460445662368, abs=1e-9)

    def test_rejected_below_capability_floor(self):
        r = expert_auto_solve(self.PARAMS, r_e=0.4, h=0.1)
        assert not r.adopted
        assert r.adoption.binding_constraint == "r <= adopt_r_min"
        assert r.design.x_star == pytest.approx(0.65, abs=1e-12)

    def test_capability_insensitivity_is_exact(self):
        xs = {
            expert_auto_solve(self.PARAMS, r_e=r, h=0.1).design.x_star
            for r in (0.6, 0.9)
        }
        assert len(xs) == 1
        assert xs.pop() == 0.30875


class TestExpertAug:
    PARAMS = ModelParams(k=0.7, w=0.4, t_c=0.7)

    def test_adopted_design(self):
        r = expert_aug_solve(self.PARAMS, r_u=0.5, h=0.2)
        assert r.adopted
        assert r.design.x_star == pytest.approx(0.525, abs=1e-12)
        assert r.design.span == pytest.approx(4.296455424274972, abs=1e-9)
        base = baseline_solve(self.PARAMS)
        assert base.design.span == pytest.approx(5.714285714285714, abs=1e-9)
        assert r.design.span < base.design.span  # early-stage contraction

    def test_exact_tie_resolves_to_no_adoption(self):
        r = expert_aug_solve(self.PARAMS, r_u=0.3, h=0.3)
        assert not r.adopted
        assert r.design.x_star == pytest.approx(0.75, abs=1e-12)

    def test_rejected_when_hallucination_exceeds_capability(self):
        r = expert_aug_solve(self.PARAMS, r_u=0.5, h=0.6)
        assert not r.adopted
        assert r.thresholds["adopt_h_max"] == 0.5
