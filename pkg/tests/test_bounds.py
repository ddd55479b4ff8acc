"""Closed-form bound calculators and the worst-case rate constructions."""

from __future__ import annotations

import math

import numpy as np
import pytest

from imperfect_teaching.bounds import (
    adversarial_rate_over,
    adversarial_rate_under,
    bound_feature,
    bound_prior,
    bound_sample,
    check_bounds,
)
from imperfect_teaching.imperfect import perturb_prior
from imperfect_teaching.teacher import TeachingProblem, brute_force_teach, greedy_teach

from conftest import line_spec


class TestBoundPrior:
    def test_worked_example(self):
        pair = bound_prior(0.001, 0.2, 0.2)
        assert pair.error_bound == pytest.approx(0.0015)
        assert pair.eps_hat == pytest.approx(0.001 * 0.8 / 1.2)

    def test_no_noise_collapses(self):
        pair = bound_prior(0.02, 0.0, 0.0)
        assert pair == (0.02, 0.02, False)

    def test_one_sided(self):
        pair = bound_prior(0.1, 0.5, 0.0)
        assert pair.error_bound == pytest.approx(0.2)
        assert pair.eps_hat == pytest.approx(0.05)

    def test_algebraic_identity(self):
        # eps_hat * error_bound = eps^2 exactly, for any noise level.
        for eps in (0.001, 0.01, 0.3):
            for d1, d2 in ((0.1, 0.7), (0.0, 0.4), (0.8, 0.0)):
                pair = bound_prior(eps, d1, d2)
                assert pair.eps_hat * pair.error_bound == pytest.approx(eps**2, rel=1e-12)

    def test_monotone_in_noise(self):
        grid = np.linspace(0.0, 0.8, 9)
        bounds = [bound_prior(0.01, d, d) for d in grid]
        for a, b in zip(bounds, bounds[1:]):
            assert b.error_bound >= a.error_bound
            assert b.eps_hat <= a.eps_hat

    def test_degenerate_delta1(self):
        with pytest.raises(ValueError):
            bound_prior(0.01, 1.0, 0.0)


class TestBoundSample:
    def test_collapses_to_perfect_case(self):
        pair = bound_sample(0.01, 0.0, 0.0, 5.0, 0.5, 0.25, 0.25, 0.25)
        assert pair.error_bound == pytest.approx(0.01)
        assert pair.eps_hat == pytest.approx(0.01)
        assert not pair.vacuous

    def test_worked_example(self):
        pair = bound_sample(0.01, 0.001, 1.0, 2.0, 0.5, 0.5, 0.5, 0.5)
        assert pair.error_bound == pytest.approx(0.012)
        assert pair.eps_hat == pytest.approx(0.002)

    def test_vacuous_clamp(self):
        pair = bound_sample(0.01, 0.9, 0.0, 1.0, 0.5, 0.5, 0.5, 0.5)
        assert pair.eps_hat == 0.0
        assert pair.vacuous

    def test_rate_domain(self):
        with pytest.raises(ValueError):
            bound_sample(0.01, 0.0, 0.0, 1.0, 1.0, 0.5, 0.5, 0.5)

    def test_monotone_in_gap(self):
        pairs = [
            bound_sample(0.01, d2, 0.5, 2.0, 0.5, 0.5, 0.5, 0.5)
            for d2 in np.linspace(0, 0.01, 6)
        ]
        for a, b in zip(pairs, pairs[1:]):
            assert b.error_bound >= a.error_bound
            assert b.eps_hat <= a.eps_hat


class TestBoundFeature:
    def test_no_shift_matches_sample_form(self):
        feat = bound_feature(0.01, 0.0, 0.002, 3.0, 0.5, 0.4, 0.1, 0.2)
        samp = bound_sample(0.01, 0.002, 0.0, 3.0, 0.5, 0.4, 0.1, 0.2)
        assert feat.error_bound == pytest.approx(samp.error_bound)
        assert feat.eps_hat == pytest.approx(samp.eps_hat)

    def test_worked_example(self):
        pair = bound_feature(0.01, 1.0, 0.0, 2.0, 0.5, 0.5, 0.5, 0.5)
        assert pair.error_bound == pytest.approx(0.04)

    def test_stays_finite_near_hard_elimination(self):
        pair = bound_feature(0.01, 1.0, 0.0, 2.0, 0.999, 0.5, 0.5, 0.5)
        assert math.isfinite(pair.error_bound)
        worse = bound_feature(0.01, 1.0, 0.0, 2.0, 0.9999, 0.5, 0.5, 0.5)
        assert worse.error_bound > pair.error_bound


class TestAdversarialOver:
    def test_pinned_teaching_size(self):
        adv = adversarial_rate_over(eps=0.01, rate=0.5, delta=0.1)
        assert adv.k == 21
        assert adv.view_rate == pytest.approx(0.6)

    def test_predicted_error_closed_form(self):
        # 1 / (1 + (0.8)^-21 * 0.01^-1 ...) evaluates to ~0.5202.
        adv = adversarial_rate_over(eps=0.01, rate=0.5, delta=0.1)
        direct = 1.0 / (1.0 + 0.8**21 / 0.01)
        assert adv.predicted_error == pytest.approx(direct, rel=1e-6)
        assert 0.45 <= adv.predicted_error <= 0.55

    def test_simulation_matches_prediction(self):
        adv = adversarial_rate_over(eps=0.01, rate=0.5, delta=0.1)
        pool = tuple(range(len(adv.spec.examples)))
        outcome = greedy_teach(TeachingProblem(adv.view, 0.01, pool), true_spec=adv.spec)
        assert len(outcome.selected) == adv.k
        assert outcome.reached
        assert outcome.final_error == pytest.approx(adv.predicted_error, rel=1e-9)

    def test_degenerate_delta_rejected(self):
        with pytest.raises(ValueError):
            adversarial_rate_over(eps=0.01, rate=0.5, delta=0.0)
        with pytest.raises(ValueError, match="cap"):
            adversarial_rate_over(eps=0.01, rate=0.5, delta=1e-4)

    def test_infeasible_rate_rejected(self):
        with pytest.raises(ValueError):
            adversarial_rate_over(eps=0.01, rate=0.95, delta=0.1)


class TestAdversarialUnder:
    def test_small_case_exact_agreement(self):
        # k = ceil(ln(10) / ln(0.7/0.5)) = 7; both solvers land on it.
        adv = adversarial_rate_under(eps=0.1, eps_hat=0.01, rate=0.5, delta=0.2)
        assert adv.k == 7
        pool = tuple(range(len(adv.spec.examples)))
        view = brute_force_teach(TeachingProblem(adv.view, 0.1, pool))
        oracle = brute_force_teach(TeachingProblem(adv.spec, 0.01, pool))
        assert len(view.selected) == 7
        assert len(oracle.selected) == 7

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            adversarial_rate_under(eps=0.1, eps_hat=0.2, rate=0.5, delta=0.1)
        with pytest.raises(ValueError):
            adversarial_rate_under(eps=0.1, eps_hat=0.01, rate=0.5, delta=0.5)
        with pytest.raises(ValueError):
            adversarial_rate_under(eps=0.1, eps_hat=0.01, rate=0.5, delta=0.0)


class TestConstructionGrid:
    def test_over_sizes_match_k_on_grid(self):
        for eps in (0.05, 0.1, 0.3):
            for rate in (0.3, 0.5):
                for delta in (0.1, 0.2):
                    try:
                        adv = adversarial_rate_over(eps=eps, rate=rate, delta=delta)
                    except ValueError:
                        continue
                    if adv.k > 24:
                        continue
                    pool = tuple(range(len(adv.spec.examples)))
                    got = brute_force_teach(TeachingProblem(adv.view, eps, pool))
                    assert got.reached and len(got.selected) == adv.k

    def test_under_sizes_match_k_on_grid(self):
        for eps in (0.1, 0.3):
            for rate in (0.5, 0.7):
                for delta in (0.2, 0.3):
                    try:
                        adv = adversarial_rate_under(
                            eps=eps, eps_hat=eps / 10, rate=rate, delta=delta
                        )
                    except ValueError:
                        continue
                    if adv.k > 24:
                        continue
                    pool = tuple(range(len(adv.spec.examples)))
                    view = brute_force_teach(TeachingProblem(adv.view, eps, pool))
                    oracle = brute_force_teach(TeachingProblem(adv.spec, eps / 10, pool))
                    assert len(view.selected) == adv.k == len(oracle.selected)


class TestCheckBounds:
    def test_zero_noise_report(self):
        spec = line_spec(rate=0.5)
        view = perturb_prior(spec, 0.0, 0.0, seed=0)
        pool = tuple(range(12))
        view_outcome = greedy_teach(TeachingProblem(view, 0.001, pool), true_spec=spec)
        oracle = brute_force_teach(TeachingProblem(spec, 0.001, pool), true_spec=spec)
        report = check_bounds(
            "prior", spec, 0.001, {"delta1": 0.0, "delta2": 0.0},
            view_outcome, oracle,
        )
        assert report.error_bound == pytest.approx(0.001)
        assert report.eps_hat == pytest.approx(0.001)
        assert report.satisfied_m1 and report.satisfied_m2
        assert report.oracle_size_at_eps_hat == 10

    def test_missing_oracle_is_flagged_not_raised(self):
        spec = line_spec(rate=0.5)
        view = perturb_prior(spec, 0.2, 0.2, seed=0)
        outcome = greedy_teach(TeachingProblem(view, 0.001, tuple(range(12))), true_spec=spec)
        report = check_bounds(
            "prior", spec, 0.001, {"delta1": 0.2, "delta2": 0.2}, outcome, None,
        )
        assert report.satisfied_m2 is None
        assert any("no oracle" in flag for flag in report.conditional_on)

    def test_vacuous_eps_hat_flagged(self):
        spec = line_spec(rate=0.5)
        view = perturb_prior(spec, 0.0, 0.0, seed=0)
        outcome = greedy_teach(TeachingProblem(view, 0.001, tuple(range(12))), true_spec=spec)
        report = check_bounds(
            "sample", spec, 0.001,
            {"delta2": 0.9, "delta3": 0.0, "lam": 0.0}, outcome, None,
        )
        assert report.eps_hat == 0.0
        assert report.satisfied_m2 is None
        assert any("vacuous" in flag for flag in report.conditional_on)

    def test_unknown_kind_rejected(self):
        spec = line_spec()
        outcome = greedy_teach(TeachingProblem(spec, 0.001, tuple(range(12))))
        with pytest.raises(ValueError):
            check_bounds("gamma", spec, 0.01, {}, outcome, None)

    def test_rate_witness_fails_measure_one(self):
        # Rate noise has no guarantee: the over-estimation witness lands at
        # error near one half, far above the eps yardstick.
        adv = adversarial_rate_over(eps=0.01, rate=0.5, delta=0.1)
        pool = tuple(range(len(adv.spec.examples)))
        outcome = greedy_teach(TeachingProblem(adv.view, 0.01, pool), true_spec=adv.spec)
        report = check_bounds("rate", adv.spec, 0.01, {"delta": 0.1}, outcome, None)
        assert not report.satisfied_m1
        assert report.observed_error == pytest.approx(0.5202, abs=1e-3)
        assert any("no closed-form" in flag for flag in report.conditional_on)

    def test_csv_row_shape(self):
        spec = line_spec(rate=0.5)
        view = perturb_prior(spec, 0.1, 0.1, seed=0)
        outcome = greedy_teach(TeachingProblem(view, 0.001, tuple(range(12))), true_spec=spec)
        report = check_bounds(
            "prior", spec, 0.001, {"delta1": 0.1, "delta2": 0.1}, outcome, None,
        )
        row = report.csv_row()
        assert len(row) == 11
        assert row[0] == "prior"
        assert row[2] == "delta1=0.1;delta2=0.1"
