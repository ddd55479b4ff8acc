"""Noise models producing imperfect teacher views, plus structural verifiers.

Four ways a teacher's knowledge can deviate from the truth, each perturbing
exactly one component of the task tuple:

* ``prior``   - multiplicative noise on the learner's initial scores,
* ``rate``    - a worst-case over- or under-estimate of the learning rate,
* ``sample``  - ground-truth labels available only for a sampled subset,
* ``feature`` - a noisy feature map shifting every instance by a fixed norm.

A :class:`TeacherView` mirrors the task-spec shape, so the solvers in
:mod:`imperfect_teaching.teacher` can plan directly on it, while evaluation
against the true task stays with the caller.  The verifiers at the bottom
decide the structural conditions those noise models are measured against:
perturbed-set matching, error-estimate gaps, and empirical smoothness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .core import Hypothesis, Instance, LabeledExample, TaskSpec, _TeachingGeometry

__all__ = [
    "PerturbationSpec",
    "TeacherView",
    "check_delta_perturbed",
    "certify_sample_view",
    "estimate_lambda",
    "measure_err_gap",
    "min_certifying_delta",
    "perturb_features",
    "perturb_prior",
    "perturb_rate",
    "realized_flip_counts",
    "sample_examples",
]

# Under-estimated rates are floored here instead of 0 so the learner model's
# requirement eta in (0, 1] keeps holding.
RATE_FLOOR = 1e-9

# Slack added to the distance threshold in matching decisions, so sets built
# by construction at exactly the threshold distance still match.
_DIST_SLACK = 1e-9

KINDS = ("prior", "rate", "sample", "feature")


@dataclass(frozen=True)
class PerturbationSpec:
    """Which noise model produced a view and with what parameters.

    ``params`` is kind-specific: prior -> (delta1, delta2); rate ->
    (delta, direction); sample -> (fraction,); feature -> (delta1,).
    """

    kind: str
    params: tuple

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}")


@dataclass(frozen=True, eq=False)
class TeacherView(_TeachingGeometry):
    """The teacher's (possibly wrong) picture of a task.

    Field-for-field compatible with a task spec so solvers can plan on it;
    examples keep their original ids so selections map straight back onto
    the true task.  Unlike a task spec, ``prior`` need not be normalized and
    example ids need not be contiguous.
    """

    hypotheses: tuple[Hypothesis, ...]
    target_id: int
    examples: tuple[LabeledExample, ...]
    prior: np.ndarray
    rate: float
    provenance: PerturbationSpec
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        prior = np.asarray(self.prior, dtype=np.float64).copy()
        prior.setflags(write=False)
        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        object.__setattr__(self, "examples", tuple(self.examples))


def _view_target(errors: np.ndarray) -> int:
    """Teacher's target choice: minimal estimated error, smallest id first."""
    return int(np.argmin(errors))


def perturb_prior(spec: TaskSpec, delta1: float, delta2: float, seed: int) -> TeacherView:
    """Multiplicative prior noise: each entry scaled by an independent
    uniform draw from [1 - delta1, 1 + delta2].

    The result is deliberately NOT renormalized: the noise definition and
    everything downstream only use the per-hypothesis ratio bounds, and
    renormalizing could push ratios outside them.
    """
    if not 0.0 <= delta1 < 1.0:
        raise ValueError(f"delta1 must lie in [0, 1), got {delta1}")
    if delta2 < 0.0:
        raise ValueError(f"delta2 must be non-negative, got {delta2}")
    rng = np.random.default_rng(seed)
    factors = rng.uniform(1.0 - delta1, 1.0 + delta2, size=len(spec.hypotheses))
    return TeacherView(
        hypotheses=spec.hypotheses,
        target_id=_view_target(spec.errors),
        examples=spec.examples,
        prior=spec.prior * factors,
        rate=spec.rate,
        provenance=PerturbationSpec("prior", (delta1, delta2)),
        seed=seed,
    )


def perturb_rate(spec: TaskSpec, delta: float, direction: str) -> TeacherView:
    """Worst-case rate misestimate: eta + delta (over) or eta - delta (under).

    Deterministic; the under direction floors at a tiny positive value so the
    view still describes a valid learner.
    """
    if delta < 0.0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    if direction == "over":
        rate = min(spec.rate + delta, 1.0)
    elif direction == "under":
        rate = max(spec.rate - delta, RATE_FLOOR)
    else:
        raise ValueError(f"direction must be 'over' or 'under', got {direction!r}")
    return TeacherView(
        hypotheses=spec.hypotheses,
        target_id=_view_target(spec.errors),
        examples=spec.examples,
        prior=spec.prior,
        rate=rate,
        provenance=PerturbationSpec("rate", (delta, direction)),
    )


def sample_examples(spec: TaskSpec, fraction: float, seed: int) -> TeacherView:
    """Teacher knows labels only for a uniform sample of ceil(fraction * N)
    examples; its target is re-chosen as the empirical-error minimizer."""
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    n = len(spec.examples)
    m = math.ceil(fraction * n)
    rng = np.random.default_rng(seed)
    keep = np.sort(rng.choice(n, size=m, replace=False))
    examples = tuple(spec.examples[i] for i in keep)
    view = TeacherView(
        hypotheses=spec.hypotheses,
        target_id=0,
        examples=examples,
        prior=spec.prior,
        rate=spec.rate,
        provenance=PerturbationSpec("sample", (fraction,)),
        seed=seed,
    )
    object.__setattr__(view, "target_id", _view_target(view.errors))
    return view


def perturb_features(spec: TaskSpec, delta1: float, seed: int) -> TeacherView:
    """Feature-map noise: every instance shifted by an independent random
    direction scaled to norm exactly delta1.  Labels never move."""
    if delta1 < 0.0:
        raise ValueError(f"delta1 must be non-negative, got {delta1}")
    rng = np.random.default_rng(seed)
    d = spec.dimension
    n = len(spec.examples)
    dirs = rng.normal(size=(n, d))
    norms = np.linalg.norm(dirs, axis=1)
    while np.any(norms < 1e-12):
        bad = norms < 1e-12
        dirs[bad] = rng.normal(size=(int(bad.sum()), d))
        norms = np.linalg.norm(dirs, axis=1)
    shifted = spec.features + delta1 * dirs / norms[:, np.newaxis]
    examples = tuple(
        LabeledExample(Instance(ex.instance.id, shifted[i]), ex.label)
        for i, ex in enumerate(spec.examples)
    )
    view = TeacherView(
        hypotheses=spec.hypotheses,
        target_id=0,
        examples=examples,
        prior=spec.prior,
        rate=spec.rate,
        provenance=PerturbationSpec("feature", (delta1,)),
        seed=seed,
    )
    object.__setattr__(view, "target_id", _view_target(view.errors))
    return view


# --- structural verifiers ---------------------------------------------------


def _match_count(
    left: Sequence[LabeledExample],
    right: Sequence[LabeledExample],
    delta: float,
) -> int:
    """Size of a maximum matching pairing equal labels within distance delta."""
    if not left:
        return 0
    lf = np.stack([ex.instance.features for ex in left])
    rf = np.stack([ex.instance.features for ex in right])
    ll = np.array([ex.label for ex in left])
    rl = np.array([ex.label for ex in right])
    dist = np.linalg.norm(lf[:, np.newaxis, :] - rf[np.newaxis, :, :], axis=2)
    adj = (dist <= delta + _DIST_SLACK) & (ll[:, np.newaxis] == rl[np.newaxis, :])
    if not adj.any():
        return 0
    match = maximum_bipartite_matching(csr_matrix(adj), perm_type="column")
    return int((match >= 0).sum())


def check_delta_perturbed(
    set_a: Sequence[LabeledExample],
    set_b: Sequence[LabeledExample],
    delta: float,
) -> bool:
    """Whether ``set_b`` is a delta-perturbed version of ``set_a``.

    True iff there is a label-preserving bijection pairing each example with
    one at feature distance at most delta; decided by exact maximum
    bipartite matching.  Sets of different sizes are never perturbed
    versions of each other.
    """
    if len(set_a) != len(set_b):
        return False
    if not set_a:
        return True
    return _match_count(set_a, set_b, delta) == len(set_a)


def certify_sample_view(
    spec: TaskSpec,
    view: TeacherView,
    delta3: float,
    probe_sets: Iterable[Sequence[int]],
) -> bool:
    """Whether every probe set has a delta3-perturbed version inside the
    view's example pool.

    A probe is certified when a maximum matching of its examples into the
    whole view pool (equal labels, distance at most delta3) saturates the
    probe; probes larger than the pool are a parameter error.
    """
    by_id = {ex.instance.id: ex for ex in spec.examples}
    for probe in probe_sets:
        probe_examples = [by_id[i] for i in probe]
        if len(probe_examples) > len(view.examples):
            raise ValueError("probe set larger than the sampled pool")
        if _match_count(probe_examples, view.examples, delta3) != len(probe_examples):
            return False
    return True


def min_certifying_delta(
    spec: TaskSpec,
    view: TeacherView,
    probe: Sequence[int],
) -> float:
    """Smallest delta at which the probe has a delta-perturbed version in
    the view pool (inf when labels alone make a matching impossible)."""
    by_id = {ex.instance.id: ex for ex in spec.examples}
    probe_examples = [by_id[i] for i in probe]
    if not probe_examples:
        return 0.0
    lf = np.stack([ex.instance.features for ex in probe_examples])
    rf = np.stack([ex.instance.features for ex in view.examples])
    dist = np.linalg.norm(lf[:, np.newaxis, :] - rf[np.newaxis, :, :], axis=2)
    candidates = np.unique(dist)
    lo, hi = 0, len(candidates) - 1
    if _match_count(probe_examples, view.examples, float(candidates[hi])) != len(probe_examples):
        return math.inf
    while lo < hi:
        mid = (lo + hi) // 2
        if _match_count(probe_examples, view.examples, float(candidates[mid])) == len(probe_examples):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def measure_err_gap(spec: TaskSpec, view: TeacherView) -> float:
    """Largest per-hypothesis gap between the view's error estimates and the
    true errors: the smallest certifiable delta2."""
    return float(np.max(np.abs(view.errors - spec.errors)))


def realized_flip_counts(spec: TaskSpec, view: TeacherView) -> np.ndarray:
    """Per-hypothesis count of examples whose prediction differs between the
    true features and the view's features.

    For a feature view this is the exact label-mismatch count between the
    teacher's and the learner's picture, which certifies a per-instance
    smoothness level without random probing.
    """
    if len(view.examples) != len(spec.examples):
        raise ValueError("view must cover the same examples as the task")
    return (spec.predictions != view.predictions).sum(axis=1)


def estimate_lambda(spec: TaskSpec, delta: float, trials: int, seed: int) -> float:
    """Empirical lower bound on the smoothness constant.

    Each trial perturbs a random subset of the examples by random directions
    of norm exactly delta and counts, per hypothesis, how many predictions
    flip; the estimate is the worst observed flips / delta.  The true
    constant can only be larger.
    """
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if trials < 1:
        raise ValueError("at least one trial is required")
    rng = np.random.default_rng(seed)
    n, d = spec.features.shape
    worst = 0
    for _ in range(trials):
        size = int(rng.integers(1, n + 1))
        subset = rng.choice(n, size=size, replace=False)
        dirs = rng.normal(size=(size, d))
        norms = np.linalg.norm(dirs, axis=1)
        while np.any(norms < 1e-12):
            bad = norms < 1e-12
            dirs[bad] = rng.normal(size=(int(bad.sum()), d))
            norms = np.linalg.norm(dirs, axis=1)
        moved = spec.features[subset] + delta * dirs / norms[:, np.newaxis]
        before = spec.predictions[:, subset]
        after = np.where(spec.weights @ moved.T >= 0.0, 1, -1)
        flips = int((before != after).sum(axis=1).max())
        worst = max(worst, flips)
    return worst / delta
