"""Shared builders for small hand-analyzable teaching tasks."""

from __future__ import annotations

import numpy as np
import pytest

from imperfect_teaching.core import Hypothesis, Instance, LabeledExample, TaskSpec


def line_spec(
    n_points: int = 12,
    rate: float = 0.5,
    prior: tuple[float, float] = (0.5, 0.5),
) -> TaskSpec:
    """1-d task: target sign(x) vs. its exact opposite, over positive points.

    Every example contradicts the anti-target and agrees with the target, so
    err = (0, 1) and each shown example multiplies the anti-target's score
    by 1 - rate.
    """
    hypotheses = (
        Hypothesis(id=0, weights=np.array([1.0])),
        Hypothesis(id=1, weights=np.array([-1.0])),
    )
    examples = tuple(
        LabeledExample(Instance(i, np.array([1.0 + i])), 1) for i in range(n_points)
    )
    return TaskSpec(
        hypotheses=hypotheses,
        target_id=0,
        examples=examples,
        prior=np.array(prior),
        rate=rate,
    )


def random_spec(
    rng: np.random.Generator,
    n_points: int = 10,
    n_hypotheses: int = 4,
    d: int = 2,
    rate: float | None = None,
) -> TaskSpec:
    """Random realizable task: labels assigned by a random target direction."""
    points = rng.normal(size=(n_points, d))
    weights = [rng.normal(size=d) for _ in range(n_hypotheses)]
    target_id = int(rng.integers(n_hypotheses))
    labels = np.where(points @ weights[target_id] >= 0.0, 1, -1)
    hypotheses = tuple(Hypothesis(id=i, weights=w) for i, w in enumerate(weights))
    examples = tuple(
        LabeledExample(Instance(i, points[i]), int(labels[i])) for i in range(n_points)
    )
    prior = rng.uniform(0.2, 1.0, size=n_hypotheses)
    prior /= prior.sum()
    return TaskSpec(
        hypotheses=hypotheses,
        target_id=target_id,
        examples=examples,
        prior=prior,
        rate=float(rng.uniform(0.2, 0.95)) if rate is None else rate,
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
