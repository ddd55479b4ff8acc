"""Domain types and learner dynamics for teaching-set simulations.

A teaching task is a tuple of a finite hypothesis class of linear-threshold
classifiers, a target hypothesis, a pool of labeled examples, a prior score
vector over hypotheses, and a learning rate ``eta``.  The simulated learner
keeps one multiplicative score per hypothesis: every shown example whose
label a hypothesis contradicts multiplies that hypothesis' score by
``1 - eta`` (hard elimination at ``eta = 1``).  The learner's expected error
is the score-weighted average of per-hypothesis error rates.

Scores are maintained in the log domain with an explicit elimination flag so
that ``eta = 1`` never produces ``-inf`` arithmetic and long teaching
sequences never underflow.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "DegeneratePosteriorError",
    "Hypothesis",
    "Instance",
    "LabeledExample",
    "LearnerState",
    "TaskSpec",
    "error_after",
    "hypothesis_error",
    "learner_error",
    "likelihood",
    "posterior_error_from_counts",
    "predict",
    "spec_from_json",
    "spec_to_json",
    "update",
]


class DegeneratePosteriorError(RuntimeError):
    """All hypothesis scores are exactly zero (possible only at eta = 1)."""


def _as_readonly_f64(values: Iterable[float]) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coordinates must be finite")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Instance:
    """A single instance: an integer id plus its feature-space image."""

    id: int
    features: np.ndarray

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ValueError("instance ids must be non-negative")
        object.__setattr__(self, "features", _as_readonly_f64(self.features))


@dataclass(frozen=True, eq=False)
class LabeledExample:
    """An instance together with its ground-truth label in {-1, +1}."""

    instance: Instance
    label: int

    def __post_init__(self) -> None:
        if self.label not in (-1, 1):
            raise ValueError(f"label must be -1 or +1, got {self.label}")


@dataclass(frozen=True, eq=False)
class Hypothesis:
    """A linear-threshold classifier ``x -> sign(<weights, features(x)>)``."""

    id: int
    weights: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _as_readonly_f64(self.weights))


def predict(hypothesis: Hypothesis, instance: Instance) -> int:
    """Predicted label of ``instance`` under ``hypothesis``.

    Ties on the decision boundary resolve to +1 so predictions are
    deterministic.
    """
    w, x = hypothesis.weights, instance.features
    if w.shape != x.shape:
        raise ValueError(
            f"dimension mismatch: weights d={w.shape[0]}, features d={x.shape[0]}"
        )
    return 1 if float(w @ x) >= 0.0 else -1


def likelihood(label: int, hypothesis: Hypothesis, instance: Instance, rate: float) -> float:
    """Per-example score multiplier: ``1 - rate`` on a contradicted label, else 1."""
    if not 0.0 < rate <= 1.0:
        raise ValueError(f"rate must lie in (0, 1], got {rate}")
    return 1.0 - rate if predict(hypothesis, instance) != label else 1.0


class _TeachingGeometry:
    """Cached matrix views shared by :class:`TaskSpec` and teacher views.

    Subclasses provide ``hypotheses``, ``examples``, ``prior``, ``rate`` and
    ``target_id``; everything else is derived and cached.
    """

    hypotheses: Sequence[Hypothesis]
    examples: Sequence[LabeledExample]
    prior: np.ndarray
    rate: float
    target_id: int

    @cached_property
    def dimension(self) -> int:
        return int(self.hypotheses[0].weights.shape[0])

    @cached_property
    def features(self) -> np.ndarray:
        arr = np.stack([ex.instance.features for ex in self.examples])
        arr.setflags(write=False)
        return arr

    @cached_property
    def labels(self) -> np.ndarray:
        arr = np.array([ex.label for ex in self.examples], dtype=np.int8)
        arr.setflags(write=False)
        return arr

    @cached_property
    def weights(self) -> np.ndarray:
        arr = np.stack([h.weights for h in self.hypotheses])
        arr.setflags(write=False)
        return arr

    @cached_property
    def predictions(self) -> np.ndarray:
        """(H, N) matrix of predicted labels, boundary ties resolved to +1."""
        arr = np.where(self.weights @ self.features.T >= 0.0, 1, -1).astype(np.int8)
        arr.setflags(write=False)
        return arr

    @cached_property
    def mismatch(self) -> np.ndarray:
        """(H, N) boolean matrix: hypothesis h contradicts example z's label."""
        arr = self.predictions != self.labels[np.newaxis, :]
        arr.setflags(write=False)
        return arr

    @cached_property
    def errors(self) -> np.ndarray:
        """Per-hypothesis error over this object's own example set.

        Exact integer mismatch counts divided once, so no accumulation error.
        """
        counts = self.mismatch.sum(axis=1)
        arr = counts.astype(np.float64) / len(self.examples)
        arr.setflags(write=False)
        return arr

    @cached_property
    def example_ids(self) -> tuple[int, ...]:
        return tuple(ex.instance.id for ex in self.examples)

    @cached_property
    def id_to_column(self) -> dict[int, int]:
        return {ex.instance.id: col for col, ex in enumerate(self.examples)}

    def columns_for(self, example_ids: Iterable[int]) -> np.ndarray:
        """Map example ids to columns of the cached matrices."""
        mapping = self.id_to_column
        return np.array([mapping[i] for i in example_ids], dtype=np.intp)


@dataclass(frozen=True, eq=False)
class TaskSpec(_TeachingGeometry):
    """Full-knowledge description of one teaching problem.

    ``prior`` must be a probability distribution over the hypothesis class;
    example ids must run contiguously from 0.  Instances are immutable after
    construction and safe to share across workers.
    """

    hypotheses: tuple[Hypothesis, ...]
    target_id: int
    examples: tuple[LabeledExample, ...]
    prior: np.ndarray
    rate: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        object.__setattr__(self, "examples", tuple(self.examples))
        object.__setattr__(self, "prior", _as_readonly_f64(self.prior))
        if not self.hypotheses:
            raise ValueError("hypothesis class must be non-empty")
        if not self.examples:
            raise ValueError("example set must be non-empty")
        if len(self.prior) != len(self.hypotheses):
            raise ValueError("prior length must match the hypothesis class")
        if np.any(self.prior < 0.0):
            raise ValueError("prior entries must be non-negative")
        if abs(float(self.prior.sum()) - 1.0) > 1e-12:
            raise ValueError("prior must sum to 1 within 1e-12")
        if not 0.0 < self.rate <= 1.0:
            raise ValueError(f"rate must lie in (0, 1], got {self.rate}")
        if not 0 <= self.target_id < len(self.hypotheses):
            raise ValueError("target_id out of range")
        d = self.hypotheses[0].weights.shape[0]
        for h in self.hypotheses:
            if h.weights.shape[0] != d:
                raise ValueError("all hypotheses must share one dimension")
        for ex in self.examples:
            if ex.instance.features.shape[0] != d:
                raise ValueError("example dimension must match hypotheses")
        ids = [ex.instance.id for ex in self.examples]
        if ids != list(range(len(ids))):
            raise ValueError("example ids must be contiguous from 0")

    @property
    def target(self) -> Hypothesis:
        return self.hypotheses[self.target_id]


@dataclass(frozen=True, eq=False)
class LearnerState:
    """Per-hypothesis log scores plus exact-zero elimination flags.

    ``log_scores[h]`` tracks ``log Q(h | S)`` for hypotheses that still have
    positive score; ``eliminated[h]`` marks scores that are exactly zero
    (zero prior mass, or an eta = 1 contradiction).  ``history`` lists the
    example ids shown, in order.
    """

    log_scores: np.ndarray
    eliminated: np.ndarray
    history: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        ls = np.asarray(self.log_scores, dtype=np.float64).copy()
        el = np.asarray(self.eliminated, dtype=bool).copy()
        ls.setflags(write=False)
        el.setflags(write=False)
        object.__setattr__(self, "log_scores", ls)
        object.__setattr__(self, "eliminated", el)
        object.__setattr__(self, "history", tuple(self.history))

    @classmethod
    def initial(cls, spec: TaskSpec) -> "LearnerState":
        eliminated = spec.prior == 0.0
        with np.errstate(divide="ignore"):
            log_scores = np.where(eliminated, 0.0, np.log(np.maximum(spec.prior, 1e-300)))
        return cls(log_scores=log_scores, eliminated=eliminated, history=())

    def scores(self) -> np.ndarray:
        """Linear-domain scores, with eliminated hypotheses at exactly 0."""
        return np.where(self.eliminated, 0.0, np.exp(self.log_scores))


def update(state: LearnerState, example: LabeledExample, spec: TaskSpec) -> LearnerState:
    """One learner step: multiply every contradicted hypothesis by ``1 - eta``.

    Returns a new state; the multiplicative dynamics make the result
    independent of the order in which examples are shown.
    """
    x = example.instance.features
    if x.shape[0] != spec.dimension:
        raise ValueError("example dimension does not match the task")
    preds = np.where(spec.weights @ x >= 0.0, 1, -1)
    mismatch = preds != example.label
    if spec.rate == 1.0:
        eliminated = state.eliminated | mismatch
        log_scores = state.log_scores
    else:
        eliminated = state.eliminated
        log_scores = state.log_scores + np.where(mismatch, math.log1p(-spec.rate), 0.0)
    return LearnerState(
        log_scores=log_scores,
        eliminated=eliminated,
        history=state.history + (example.instance.id,),
    )


def hypothesis_error(hypothesis: Hypothesis, examples: Sequence[LabeledExample]) -> float:
    """Fraction of ``examples`` whose label ``hypothesis`` contradicts."""
    if not examples:
        raise ValueError("hypothesis_error requires a non-empty example set")
    wrong = sum(1 for ex in examples if predict(hypothesis, ex.instance) != ex.label)
    return wrong / len(examples)


def learner_error(state: LearnerState, errors: np.ndarray) -> float:
    """Score-weighted expected error, computed stably from log scores.

    The maximum active log score is subtracted before exponentiating, so the
    ratio is exact up to float rounding even after thousands of updates.
    """
    errors = np.asarray(errors, dtype=np.float64)
    active = ~state.eliminated
    if not np.any(active):
        raise DegeneratePosteriorError("every hypothesis has score exactly zero")
    shifted = state.log_scores[active] - state.log_scores[active].max()
    weights = np.exp(shifted)
    return float((weights * errors[active]).sum() / weights.sum())


def posterior_error_from_counts(spec: _TeachingGeometry, counts: np.ndarray) -> float:
    """Learner error after a teaching set summarized by per-hypothesis
    mismatch counts.

    Equivalent to running :func:`update` once per example and then
    :func:`learner_error`, but works directly on integer contradiction
    counts so solvers can stay vectorized.
    """
    counts = np.asarray(counts)
    prior = np.asarray(spec.prior, dtype=np.float64)
    if spec.rate == 1.0:
        active = (prior > 0.0) & (counts == 0)
        if not np.any(active):
            raise DegeneratePosteriorError("every hypothesis has score exactly zero")
        weights = prior[active]
    else:
        active = prior > 0.0
        log_w = np.log(prior[active]) + counts[active] * math.log1p(-spec.rate)
        weights = np.exp(log_w - log_w.max())
    errs = np.asarray(spec.errors, dtype=np.float64)[active]
    return float((weights * errs).sum() / weights.sum())


def error_after(spec: _TeachingGeometry, example_ids: Iterable[int]) -> float:
    """Learner error after showing ``example_ids`` drawn from ``spec``."""
    cols = spec.columns_for(example_ids)
    counts = spec.mismatch[:, cols].sum(axis=1) if len(cols) else np.zeros(len(spec.hypotheses), dtype=np.intp)
    return posterior_error_from_counts(spec, counts)


# --- JSON serialization ----------------------------------------------------
#
# Schema (field order fixed):
#   {"d": int, "eta": real, "prior": [real], "hypotheses": [[real]],
#    "target": int, "examples": [{"x": [real], "y": +-1}]}
# Reals carry 17 significant digits so round-trips are bit exact.


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_vec(values: Iterable[float]) -> str:
    return "[" + ", ".join(_fmt(v) for v in values) + "]"


def spec_to_json(spec: TaskSpec) -> str:
    hyp = "[" + ", ".join(_fmt_vec(h.weights) for h in spec.hypotheses) + "]"
    exs = "[" + ", ".join(
        '{"x": ' + _fmt_vec(ex.instance.features) + f', "y": {ex.label}}}'
        for ex in spec.examples
    ) + "]"
    return (
        "{"
        + f'"d": {spec.dimension}, '
        + f'"eta": {_fmt(spec.rate)}, '
        + f'"prior": {_fmt_vec(spec.prior)}, '
        + f'"hypotheses": {hyp}, '
        + f'"target": {spec.target_id}, '
        + f'"examples": {exs}'
        + "}"
    )


def spec_from_json(text: str) -> TaskSpec:
    doc = json.loads(text)
    d = int(doc["d"])
    hypotheses = tuple(
        Hypothesis(id=i, weights=np.asarray(w, dtype=np.float64))
        for i, w in enumerate(doc["hypotheses"])
    )
    examples = tuple(
        LabeledExample(
            instance=Instance(id=i, features=np.asarray(ex["x"], dtype=np.float64)),
            label=int(ex["y"]),
        )
        for i, ex in enumerate(doc["examples"])
    )
    spec = TaskSpec(
        hypotheses=hypotheses,
        target_id=int(doc["target"]),
        examples=examples,
        prior=np.asarray(doc["prior"], dtype=np.float64),
        rate=float(doc["eta"]),
    )
    if spec.dimension != d:
        raise ValueError("declared dimension does not match the data")
    return spec
