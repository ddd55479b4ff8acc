"""Synthetic task families covering three qualitative data regimes.

* ``well_behaved`` - two class-separated Gaussian-like clusters with a
  configurable class margin; random linear hypotheses cut through the
  spread-out clouds, so small feature perturbations flip few labels.
* ``skewed``       - most of the data piled in one dense blob hugging the
  target boundary, with the hypothesis class fanned through the blob; tiny
  feature shifts flip many labels.
* ``extreme_points`` - two dense clusters plus exactly two isolated points
  near one designated coordinate; with those two points available the exact
  teaching set (hard elimination, zero slack) has size 2, without them it
  needs one eliminator per structured hypothesis, size 6.  Verified against
  the exact oracle at generation time.

``well_behaved`` and ``skewed`` emit through-origin classifiers in the
configured dimension.  ``extreme_points`` needs affine boundaries, so its
features carry a constant third coordinate on top of the two drawn ones.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Hypothesis, Instance, LabeledExample, TaskSpec
from .teacher import TeachingProblem, brute_force_teach

__all__ = [
    "GenerationError",
    "REGIMES",
    "ScenarioConfig",
    "data_radius",
    "generate",
    "scenario_from_json",
]

REGIMES = ("well_behaved", "skewed", "extreme_points")

_MAX_POINT_TRIES = 2000
_MAX_JITTER_TRIES = 60


class GenerationError(RuntimeError):
    """The generator could not realize the requested scenario."""


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters of one synthetic task family.

    ``prior`` is either the string ``"uniform"`` or an explicit list of
    weights.  The tuning knobs below the seed control cluster geometry:
    ``margin_frac`` keeps well-behaved points away from the target boundary,
    ``spread`` scales cluster width, ``min_alt_error`` rejects non-target
    hypotheses that are almost right (whose scores no finite example pool
    could push low enough), and ``dense_frac`` sizes the skewed blob.
    """

    regime: str
    n_examples: int
    n_hypotheses: int
    d: int = 2
    rate: float = 0.5
    prior: object = "uniform"
    seed: int = 0
    margin_frac: float = 0.12
    spread: float = 0.45
    min_alt_error: float = 0.1
    dense_frac: float = 0.7

    def __post_init__(self) -> None:
        if self.regime not in REGIMES:
            raise ValueError(f"regime must be one of {REGIMES}, got {self.regime!r}")
        if self.n_examples < 2 or self.n_hypotheses < 2:
            raise ValueError("need at least 2 examples and 2 hypotheses")
        if self.d < 1:
            raise ValueError("dimension must be at least 1")
        if not 0.0 < self.rate <= 1.0:
            raise ValueError("rate must lie in (0, 1]")


def scenario_from_json(text: str) -> ScenarioConfig:
    doc = json.loads(text)
    return scenario_config_from_dict(doc)


def scenario_config_from_dict(doc: dict) -> ScenarioConfig:
    known = {
        "regime", "n_examples", "n_hypotheses", "d", "rate", "prior", "seed",
        "margin_frac", "spread", "min_alt_error", "dense_frac",
    }
    unknown = set(doc) - known
    if unknown:
        raise ValueError(f"unknown scenario fields: {sorted(unknown)}")
    return ScenarioConfig(**doc)


def data_radius(spec: TaskSpec) -> float:
    """Largest feature-vector norm in the task's example set."""
    return float(np.linalg.norm(spec.features, axis=1).max())


def _resolve_prior(config: ScenarioConfig, n_hyp: int) -> np.ndarray:
    if isinstance(config.prior, str):
        if config.prior != "uniform":
            raise ValueError(f"unknown prior keyword {config.prior!r}")
        return np.full(n_hyp, 1.0 / n_hyp)
    prior = np.asarray(config.prior, dtype=np.float64)
    if len(prior) != n_hyp:
        raise ValueError("explicit prior length must match n_hypotheses")
    return prior


def _unit(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.normal(size=d)
    n = np.linalg.norm(v)
    while n < 1e-12:
        v = rng.normal(size=d)
        n = np.linalg.norm(v)
    return v / n


def _build_spec(
    config: ScenarioConfig,
    rng: np.random.Generator,
    points: np.ndarray,
    target_w: np.ndarray,
    alt_weights: list[np.ndarray],
) -> TaskSpec:
    """Assemble a spec with the target at a seeded random index."""
    labels = np.where(points @ target_w >= 0.0, 1, -1)
    weights = [target_w] + alt_weights
    order = rng.permutation(len(weights))
    target_id = int(np.nonzero(order == 0)[0][0])
    hypotheses = tuple(
        Hypothesis(id=i, weights=weights[int(order[i])]) for i in range(len(weights))
    )
    examples = tuple(
        LabeledExample(Instance(i, points[i]), int(labels[i])) for i in range(len(points))
    )
    return TaskSpec(
        hypotheses=hypotheses,
        target_id=target_id,
        examples=examples,
        prior=_resolve_prior(config, len(weights)),
        rate=config.rate,
    )


def _collect_alternatives(
    rng: np.random.Generator,
    points: np.ndarray,
    labels: np.ndarray,
    n_needed: int,
    min_err: float,
    draw,
) -> list[np.ndarray]:
    """Draw hypotheses until ``n_needed`` distinct, sufficiently-wrong ones
    are found; distinctness is by prediction pattern on the points."""
    target_pattern = labels.astype(np.int8).tobytes()
    seen = {target_pattern}
    kept: list[np.ndarray] = []
    for _ in range(400 * n_needed):
        w = draw()
        preds = np.where(points @ w >= 0.0, 1, -1).astype(np.int8)
        pattern = preds.tobytes()
        if pattern in seen:
            continue
        err = float((preds != labels).mean())
        if err < min_err:
            continue
        seen.add(pattern)
        kept.append(w)
        if len(kept) == n_needed:
            return kept
    raise GenerationError(
        f"could only realize {len(kept)}/{n_needed} distinct hypotheses with "
        f"error >= {min_err}; loosen min_alt_error or enlarge the data"
    )


def _well_behaved(config: ScenarioConfig, rng: np.random.Generator) -> TaskSpec:
    d = config.d
    target_w = _unit(rng, d)
    margin = config.margin_frac
    sigma = config.spread
    centers = np.stack([target_w, -target_w])
    points = np.empty((config.n_examples, d))
    for i in range(config.n_examples):
        c = centers[i % 2]
        for _ in range(_MAX_POINT_TRIES):
            p = c + sigma * rng.normal(size=d)
            if abs(float(p @ target_w)) >= margin:
                points[i] = p
                break
        else:
            raise GenerationError("could not place a point outside the class margin")
    labels = np.where(points @ target_w >= 0.0, 1, -1)
    alts = _collect_alternatives(
        rng, points, labels, config.n_hypotheses - 1, config.min_alt_error,
        lambda: _unit(rng, d),
    )
    return _build_spec(config, rng, points, target_w, alts)


def _rotate_2d(v: np.ndarray, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([c * v[0] - s * v[1], s * v[0] + c * v[1]])


def _skewed(config: ScenarioConfig, rng: np.random.Generator) -> TaskSpec:
    if config.d != 2:
        raise ValueError("the skewed regime is defined for d=2")
    target_w = _unit(rng, 2)
    # A point on the target boundary at unit radius, where the blob sits.
    boundary_dir = np.array([-target_w[1], target_w[0]])
    n_dense = max(2, int(round(config.dense_frac * config.n_examples)))
    n_rest = config.n_examples - n_dense
    blob = boundary_dir + 0.02 * rng.normal(size=(n_dense, 2))
    anchors = np.empty((n_rest, 2))
    for i in range(n_rest):
        c = target_w if i % 2 == 0 else -target_w
        anchors[i] = 1.2 * c + 0.15 * rng.normal(size=2)
    points = np.vstack([blob, anchors]) if n_rest else blob
    labels = np.where(points @ target_w >= 0.0, 1, -1)

    def draw() -> np.ndarray:
        # Fan of boundaries through the blob: small rotations of the target.
        return _rotate_2d(target_w, rng.uniform(-0.5, 0.5))

    alts = _collect_alternatives(
        rng, points, labels, config.n_hypotheses - 1, config.min_alt_error, draw,
    )
    return _build_spec(config, rng, points, target_w, alts)


# --- the extreme-points regime ----------------------------------------------
#
# Layout in the (u, v) plane (features are (u, v, 1)); the target is
# sign(v).  Six structured wrong hypotheses each misclassify exactly one of
# the two isolated points near (3, 0) plus one personal fringe point, so
# the two isolated points teach everything at once while the fringe points
# can only be eliminated one hypothesis at a time.

_EXTREMES = [(3.0, 0.15), (3.0, -0.15)]                       # ids 0, 1
_FRINGE_LOW = [(-1.0, -1.3), (-2.0, -0.9), (-3.0, -1.3)]      # ids 2-4
_FRINGE_HIGH = [(-1.0, 1.3), (-2.0, 0.9), (-3.0, 1.3)]        # ids 5-7

# Boundary lines v = a u + b with "+1 above"; theta = (-a, 1, -b).
_SCOOPER_LINES = [
    (-0.55, -1.93),  # lifts fringe id 2 over the line  -> errs {E_low, 2}
    (0.0, -1.1),     # flat under fringe id 3           -> errs {E_low, 3}
    (0.55, 0.27),    # lifts fringe id 4                -> errs {E_high, 4}
    (0.55, 1.93),    # drops fringe id 5 under the line -> errs {E_high, 5}
    (0.0, 1.1),      # flat over fringe id 6            -> errs {E_high, 6}
    (-0.55, -0.27),  # drops fringe id 7                -> errs {E_low, 7}
]

# Optional additional wrong hypotheses; every one of them misclassifies at
# least one isolated point and at least one non-isolated point, so the
# 2-vs-6 oracle property survives their inclusion.
_EXTRA_KINDS = ("flat_low", "flat_high", "slant_low", "slant_high", "vertical", "anti")


def _extreme_hypothesis_weights(kind: str, jit: Sequence[float]) -> np.ndarray:
    if kind == "flat_low":
        a, b = 0.0 + jit[0], -1.35 + jit[1]
    elif kind == "flat_high":
        a, b = 0.0 + jit[0], 1.35 + jit[1]
    elif kind == "slant_low":
        a, b = 0.3 + jit[0], -0.6 + jit[1]
    elif kind == "slant_high":
        a, b = -0.3 + jit[0], 0.6 + jit[1]
    elif kind == "vertical":
        return np.array([-1.0 + jit[0], jit[1], 0.1])
    elif kind == "anti":
        return np.array([jit[0], -1.0, jit[1]])
    else:
        raise ValueError(kind)
    return np.array([-a, 1.0, -b])


def _extreme_points_once(config: ScenarioConfig, rng: np.random.Generator) -> TaskSpec:
    n = config.n_examples
    jitter = lambda s=0.02: float(rng.uniform(-s, s))

    pts2d = [(u + jitter(), v + jitter()) for u, v in _EXTREMES + _FRINGE_LOW + _FRINGE_HIGH]
    n_blob = n - len(pts2d)
    for i in range(n_blob):
        sign = -1.0 if i % 2 == 0 else 1.0
        pts2d.append((rng.uniform(-4.6, -3.6), sign * rng.uniform(2.3, 2.9)))
    points = np.array([[u, v, 1.0] for u, v in pts2d])

    target_w = np.array([0.0, 1.0, 0.0])
    weights = []
    for a, b in _SCOOPER_LINES:
        weights.append(np.array([-(a + jitter(0.01)), 1.0, -(b + jitter(0.01))]))
    n_extra = config.n_hypotheses - 1 - len(_SCOOPER_LINES)
    if n_extra < 0:
        raise ValueError("extreme_points needs n_hypotheses >= 7")
    if n_extra > len(_EXTRA_KINDS):
        raise ValueError(
            f"extreme_points supports at most {1 + len(_SCOOPER_LINES) + len(_EXTRA_KINDS)} hypotheses"
        )
    for kind in _EXTRA_KINDS[:n_extra]:
        weights.append(_extreme_hypothesis_weights(kind, (jitter(0.01), jitter(0.01))))
    return _build_spec(config, rng, points, target_w, weights)


def certify_extreme_points(spec: TaskSpec) -> tuple[int, int]:
    """Exact hard-elimination teaching sizes with and without the two
    isolated points (which always carry ids 0 and 1).

    Raises :class:`GenerationError` when either problem is unsolvable.
    """
    hard = TaskSpec(
        hypotheses=spec.hypotheses,
        target_id=spec.target_id,
        examples=spec.examples,
        prior=spec.prior,
        rate=1.0,
    )
    full = brute_force_teach(TeachingProblem(hard, 0.0, tuple(range(len(spec.examples)))))
    without = brute_force_teach(TeachingProblem(hard, 0.0, tuple(range(2, len(spec.examples)))))
    if not (full.reached and without.reached):
        raise GenerationError("extreme-points certification problem is unsolvable")
    return len(full.selected), len(without.selected)


def _extreme_points(config: ScenarioConfig, rng: np.random.Generator) -> TaskSpec:
    if config.n_examples < 12:
        raise ValueError("extreme_points needs n_examples >= 12")
    for _ in range(_MAX_JITTER_TRIES):
        try:
            spec = _extreme_points_once(config, rng)
        except ValueError:
            raise
        except GenerationError:
            continue
        patterns = {spec.predictions[i].tobytes() for i in range(len(spec.hypotheses))}
        if len(patterns) != len(spec.hypotheses):
            continue
        try:
            with_size, without_size = certify_extreme_points(spec)
        except GenerationError:
            continue
        if with_size == 2 and without_size >= 6:
            return spec
    raise GenerationError("could not certify the extreme-points property")


def generate(config: ScenarioConfig) -> TaskSpec:
    """Generate a realizable task for the configured regime.

    Deterministic given the config (including its seed); every generated
    spec has a zero-error target, distinct prediction patterns across the
    hypothesis class, and a prior that sums to one.
    """
    rng = np.random.default_rng(config.seed)
    if config.regime == "well_behaved":
        spec = _well_behaved(config, rng)
    elif config.regime == "skewed":
        spec = _skewed(config, rng)
    else:
        spec = _extreme_points(config, rng)
    if float(spec.errors[spec.target_id]) != 0.0:
        raise GenerationError("generated task is not realizable")
    return spec
