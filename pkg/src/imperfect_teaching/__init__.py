"""Machine-teaching simulation: probabilistic learners, optimal teaching
sets, noise models for imperfect teachers, and robustness-bound checks."""

from .bounds import (
    BoundPair,
    BoundReport,
    RateAdversary,
    adversarial_rate_over,
    adversarial_rate_under,
    bound_feature,
    bound_prior,
    bound_sample,
    check_bounds,
)
from .core import (
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
from .imperfect import (
    PerturbationSpec,
    TeacherView,
    certify_sample_view,
    check_delta_perturbed,
    estimate_lambda,
    measure_err_gap,
    min_certifying_delta,
    perturb_features,
    perturb_prior,
    perturb_rate,
    realized_flip_counts,
    sample_examples,
)
from .scenarios import GenerationError, ScenarioConfig, data_radius, generate
from .teacher import (
    PoolCapacityError,
    TeachingOutcome,
    TeachingProblem,
    brute_force_teach,
    greedy_teach,
    outcome_to_json,
    random_teach,
    stopping_threshold,
    teaching_objective,
    threshold_reachable,
)

__version__ = "0.1.0"
