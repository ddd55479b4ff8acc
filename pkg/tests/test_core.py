"""Learner-dynamics tests: predictions, score updates, and expected error."""

from __future__ import annotations

import math

import numpy as np
import pytest

from imperfect_teaching.core import (
    DegeneratePosteriorError,
    Hypothesis,
    Instance,
    LabeledExample,
    LearnerState,
    TaskSpec,
    error_after,
    hypothesis_error,
    learner_error,
    likelihood,
    predict,
    spec_from_json,
    spec_to_json,
    update,
)

from conftest import line_spec, random_spec


def _h(w) -> Hypothesis:
    return Hypothesis(id=0, weights=np.array(w, dtype=float))


def _x(coords) -> Instance:
    return Instance(id=0, features=np.array(coords, dtype=float))


class TestPredict:
    def test_positive_side(self):
        assert predict(_h([1, 0]), _x([3, 0])) == 1

    def test_negative_side(self):
        assert predict(_h([1, 0]), _x([-2, 5])) == -1

    def test_boundary_ties_resolve_positive(self):
        assert predict(_h([1, -1]), _x([2, 2])) == 1

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            predict(_h([1, 0]), _x([1, 2, 3]))


class TestLikelihood:
    def test_contradiction_returns_survival(self):
        assert likelihood(-1, _h([1.0]), _x([2.0]), 0.5) == 0.5

    def test_agreement_returns_one(self):
        assert likelihood(1, _h([1.0]), _x([2.0]), 0.9) == 1.0

    def test_hard_elimination(self):
        assert likelihood(-1, _h([1.0]), _x([2.0]), 1.0) == 0.0

    @pytest.mark.parametrize("rate", [0.0, -0.1, 1.5])
    def test_rate_domain(self, rate):
        with pytest.raises(ValueError):
            likelihood(1, _h([1.0]), _x([2.0]), rate)


class TestUpdate:
    def test_agreeing_example_leaves_state_unchanged(self):
        spec = line_spec(rate=0.5)
        state = LearnerState.initial(spec)
        after = update(state, spec.examples[0], spec)
        # Example agrees with the target, so its log score is untouched.
        assert after.log_scores[0] == state.log_scores[0]
        assert after.history == (0,)

    def test_two_contradictions_multiply(self):
        # Direct product oracle: 0.25 * 0.5 * 0.5.
        expected = 0.25 * 0.5 * 0.5
        spec = line_spec(rate=0.5, prior=(0.75, 0.25))
        state = LearnerState.initial(spec)
        state = update(state, spec.examples[0], spec)
        state = update(state, spec.examples[1], spec)
        assert state.scores()[1] == pytest.approx(expected, rel=1e-12)
        assert expected == 0.0625

    def test_hard_elimination_is_exact_zero(self):
        spec = line_spec(rate=1.0)
        state = update(LearnerState.initial(spec), spec.examples[0], spec)
        assert state.scores()[1] == 0.0
        assert bool(state.eliminated[1])

    def test_monotone_score_decay(self, rng):
        for _ in range(20):
            spec = random_spec(rng)
            state = LearnerState.initial(spec)
            for ex in spec.examples:
                after = update(state, ex, spec)
                assert np.all(after.scores() <= state.scores() + 1e-15)
                agree = np.array([
                    predict(h, ex.instance) == ex.label for h in spec.hypotheses
                ])
                assert np.all(after.scores()[agree] == state.scores()[agree])
                state = after

    def test_order_invariance_is_exact(self, rng):
        # Per hypothesis every update adds either 0 or the same constant,
        # so any permutation produces bit-identical log scores.
        spec = random_spec(rng, n_points=8)
        order = list(range(8))
        rng.shuffle(order)
        fwd = LearnerState.initial(spec)
        for i in range(8):
            fwd = update(fwd, spec.examples[i], spec)
        perm = LearnerState.initial(spec)
        for i in order:
            perm = update(perm, spec.examples[i], spec)
        assert np.array_equal(fwd.log_scores, perm.log_scores)
        assert np.array_equal(fwd.eliminated, perm.eliminated)

    def test_target_score_preserved_on_realizable_task(self, rng):
        for _ in range(10):
            spec = random_spec(rng)
            state = LearnerState.initial(spec)
            for ex in spec.examples:
                state = update(state, ex, spec)
            assert state.log_scores[spec.target_id] == math.log(spec.prior[spec.target_id])


class TestHypothesisError:
    def test_target_has_zero_error(self, rng):
        spec = random_spec(rng)
        assert hypothesis_error(spec.target, spec.examples) == 0.0

    def test_label_negation_has_error_one(self):
        spec = line_spec(n_points=4)
        assert hypothesis_error(spec.hypotheses[1], spec.examples) == 1.0

    def test_exact_fraction(self):
        # 3 of 12 points sit on the wrong side of the x-axis hypothesis.
        h = _h([0.0, 1.0])
        examples = tuple(
            LabeledExample(Instance(i, np.array([float(i), 1.0])), 1) for i in range(9)
        ) + tuple(
            LabeledExample(Instance(9 + i, np.array([float(i), 1.0])), -1) for i in range(3)
        )
        assert hypothesis_error(h, examples) == 0.25

    def test_empty_set_rejected(self):
        with pytest.raises(ValueError):
            hypothesis_error(_h([1.0]), ())


class TestLearnerError:
    def test_uniform_mixture_before_teaching(self):
        spec = line_spec()
        state = LearnerState.initial(spec)
        assert learner_error(state, spec.errors) == pytest.approx(0.5, abs=1e-15)

    def test_elimination_drops_error_to_zero(self):
        spec = line_spec(rate=1.0)
        state = update(LearnerState.initial(spec), spec.examples[0], spec)
        assert learner_error(state, spec.errors) == 0.0

    def test_ten_contradictions_closed_form(self):
        # Oracle: naive products, 0.5*0.5^10 / (0.5*0.5^10 + 0.5).
        expected = (0.5 * 0.5**10) / (0.5 * 0.5**10 + 0.5)
        spec = line_spec(rate=0.5)
        state = LearnerState.initial(spec)
        for ex in spec.examples[:10]:
            state = update(state, ex, spec)
        got = learner_error(state, spec.errors)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(9.756e-4, rel=1e-3)

    def test_initial_error_matches_prior_average(self, rng):
        for _ in range(20):
            spec = random_spec(rng)
            state = LearnerState.initial(spec)
            direct = float((spec.prior * spec.errors).sum())
            assert learner_error(state, spec.errors) == pytest.approx(direct, abs=1e-12)

    def test_degenerate_posterior_raises(self):
        spec = line_spec(rate=1.0)
        state = LearnerState(
            log_scores=np.zeros(2), eliminated=np.array([True, True]),
        )
        with pytest.raises(DegeneratePosteriorError):
            learner_error(state, spec.errors)

    def test_log_domain_matches_naive_products(self, rng):
        # Up to 20 shown examples, exp(log score) agrees with the direct
        # product at relative 1e-10.
        for _ in range(10):
            spec = random_spec(rng, n_points=20, rate=float(rng.uniform(0.05, 0.95)))
            state = LearnerState.initial(spec)
            naive = spec.prior.copy()
            for ex in spec.examples:
                state = update(state, ex, spec)
                for j, h in enumerate(spec.hypotheses):
                    naive[j] *= likelihood(ex.label, h, ex.instance, spec.rate)
            np.testing.assert_allclose(state.scores(), naive, rtol=1e-10)


class TestErrorAfter:
    def test_matches_stepwise_updates(self, rng):
        for _ in range(10):
            spec = random_spec(rng, n_points=12)
            ids = list(rng.choice(12, size=6, replace=False))
            state = LearnerState.initial(spec)
            for i in ids:
                state = update(state, spec.examples[i], spec)
            assert error_after(spec, ids) == pytest.approx(
                learner_error(state, spec.errors), rel=1e-12
            )


class TestTaskSpecValidation:
    def test_prior_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum to 1"):
            line_spec(prior=(0.6, 0.6))

    def test_ids_must_be_contiguous(self):
        good = line_spec()
        examples = (good.examples[0], good.examples[3])
        with pytest.raises(ValueError, match="contiguous"):
            TaskSpec(
                hypotheses=good.hypotheses, target_id=0, examples=examples,
                prior=good.prior, rate=good.rate,
            )

    def test_rate_domain(self):
        with pytest.raises(ValueError, match="rate"):
            line_spec(rate=0.0)

    def test_immutable_arrays(self):
        spec = line_spec()
        with pytest.raises(ValueError):
            spec.prior[0] = 0.9


class TestJsonRoundTrip:
    def test_field_order_and_digits(self):
        spec = line_spec(n_points=2, rate=0.5)
        text = spec_to_json(spec)
        assert text.startswith('{"d": 1, "eta": 0.5, "prior": ')
        assert '"target": 0' in text
        assert '"examples": [{"x": ' in text

    def test_round_trip_is_byte_exact(self, rng):
        spec = random_spec(rng, n_points=7, n_hypotheses=3, d=3)
        text = spec_to_json(spec)
        again = spec_to_json(spec_from_json(text))
        assert text == again

    def test_round_trip_preserves_values(self, rng):
        spec = random_spec(rng, n_points=5)
        back = spec_from_json(spec_to_json(spec))
        np.testing.assert_array_equal(back.prior, spec.prior)
        np.testing.assert_array_equal(back.features, spec.features)
        np.testing.assert_array_equal(back.labels, spec.labels)
        assert back.rate == spec.rate
        assert back.target_id == spec.target_id
