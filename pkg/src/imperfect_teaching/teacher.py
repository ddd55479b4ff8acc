"""Teaching objective, stopping threshold, and teaching-set solvers.

The surrogate objective ``F(S)`` is the prior-weighted error mass removed
from wrong hypotheses by the examples in ``S``; it is monotone and
submodular in ``S``.  Teaching stops once ``F(S)`` reaches the threshold
``C_eps``, which is sufficient for the learner's expected error to drop to
``eps`` on realizable tasks.

Three solvers share one outcome type:

* :func:`greedy_teach` - marginal-gain greedy with smallest-id tie breaking,
* :func:`brute_force_teach` - exact minimum-cardinality oracle that
  enumerates subsets by size, then lexicographically,
* :func:`random_teach` - seeded uniform baseline of a fixed size.

Every solver plans on the problem's (possibly imperfect) task description
but reports ``final_error`` against the true task when one is supplied.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import _TeachingGeometry, error_after

__all__ = [
    "PoolCapacityError",
    "TeachingOutcome",
    "TeachingProblem",
    "brute_force_teach",
    "greedy_teach",
    "max_objective",
    "teaching_objective",
    "outcome_to_json",
    "random_teach",
    "stopping_threshold",
    "threshold_reachable",
]

# Greedy stalls once the best marginal gain drops to this level; prevents
# infinite loops on flat regions of F.
STALL_GAIN = 1e-15

# Raw-subset enumeration guard and the cap on the collapsed search space
# (product over duplicate-prediction groups of group size + 1).
MAX_POOL = 24
MAX_GROUPED_SPACE = 400_000

_CHUNK = 8192


class PoolCapacityError(ValueError):
    """The brute-force search space is too large to enumerate exactly."""


@dataclass(frozen=True, eq=False)
class TeachingProblem:
    """A solver input: a task description, a target ``epsilon``, and the
    ids of pool examples eligible for selection.

    ``spec`` may be the true :class:`~imperfect_teaching.core.TaskSpec` or a
    teacher view projected into the same shape; solvers only read the shared
    geometry fields.
    """

    spec: _TeachingGeometry
    epsilon: float
    pool: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.epsilon < 0.0:
            raise ValueError("epsilon must be non-negative")
        pool = tuple(sorted(self.pool))
        known = set(self.spec.example_ids)
        for i in pool:
            if i not in known:
                raise ValueError(f"pool id {i} is not an example of the task")
        if len(set(pool)) != len(pool):
            raise ValueError("pool ids must be unique")
        object.__setattr__(self, "pool", pool)


@dataclass(frozen=True, eq=False)
class TeachingOutcome:
    """A solved teaching set with its objective trace and true final error."""

    selected: tuple[int, ...]
    objective_trace: tuple[float, ...]
    threshold: float
    reached: bool
    final_error: float


def outcome_to_json(outcome: TeachingOutcome) -> str:
    doc = {
        "selected": list(outcome.selected),
        "f_trace": list(outcome.objective_trace),
        "threshold": outcome.threshold,
        "reached": outcome.reached,
        "final_error": outcome.final_error,
    }
    return json.dumps(doc)


def _survival(rate: float, counts: np.ndarray) -> np.ndarray:
    """(1 - eta) ** counts with 0 ** 0 == 1 handled for eta = 1."""
    if rate == 1.0:
        return np.where(np.asarray(counts) > 0, 0.0, 1.0)
    return np.power(1.0 - rate, counts)


def _objective_from_counts(spec: _TeachingGeometry, counts: np.ndarray) -> float:
    w = np.asarray(spec.prior) * np.asarray(spec.errors)
    return float((w * (1.0 - _survival(spec.rate, counts))).sum())


def teaching_objective(spec: _TeachingGeometry, example_ids: Iterable[int]) -> float:
    """Prior-weighted error mass removed by the given example set."""
    cols = spec.columns_for(example_ids)
    if len(cols) == 0:
        return 0.0
    counts = spec.mismatch[:, cols].sum(axis=1)
    return _objective_from_counts(spec, counts)


def stopping_threshold(spec: _TeachingGeometry, epsilon: float) -> float:
    """F-level whose attainment guarantees learner error at most epsilon."""
    if epsilon < 0.0:
        raise ValueError("epsilon must be non-negative")
    prior = np.asarray(spec.prior)
    base = float((prior * np.asarray(spec.errors)).sum())
    return base - epsilon * float(prior[spec.target_id])


def max_objective(spec: _TeachingGeometry, pool: Sequence[int]) -> float:
    """F of the entire pool: the best any teaching set can achieve."""
    return teaching_objective(spec, pool)


def threshold_reachable(spec: _TeachingGeometry, pool: Sequence[int], epsilon: float) -> bool:
    """Whether some subset of ``pool`` can meet the stopping threshold."""
    return max_objective(spec, pool) >= stopping_threshold(spec, epsilon)


def _finish(
    problem: TeachingProblem,
    true_spec: Optional[_TeachingGeometry],
    selected: Sequence[int],
    objective_trace: Sequence[float],
    threshold: float,
    reached: bool,
) -> TeachingOutcome:
    eval_spec = true_spec if true_spec is not None else problem.spec
    return TeachingOutcome(
        selected=tuple(selected),
        objective_trace=tuple(objective_trace),
        threshold=threshold,
        reached=reached,
        final_error=error_after(eval_spec, selected),
    )


def greedy_teach(
    problem: TeachingProblem,
    true_spec: Optional[_TeachingGeometry] = None,
) -> TeachingOutcome:
    """Greedy maximization of F until the threshold is met or gains vanish.

    Ties between equally good candidates break toward the smallest example
    id.  Failure to reach the threshold is reported via ``reached=False``,
    never raised.
    """
    spec = problem.spec
    threshold = stopping_threshold(spec, problem.epsilon)
    if 0.0 >= threshold:
        return _finish(problem, true_spec, (), (), threshold, True)
    if not problem.pool:
        return _finish(problem, true_spec, (), (), threshold, False)

    pool = np.array(problem.pool, dtype=np.intp)
    cols = spec.columns_for(pool)
    m_pool = spec.mismatch[:, cols].astype(np.float64)
    # Current contribution of every hypothesis: prior * err * (1-eta)^count.
    term = np.asarray(spec.prior) * np.asarray(spec.errors)
    unused = np.ones(len(pool), dtype=bool)
    f_cur = 0.0
    selected: list[int] = []
    trace: list[float] = []

    while True:
        # Adding example z raises F by eta * sum_h term_h * mismatch[h, z].
        gains = spec.rate * (term @ m_pool)
        gains[~unused] = -np.inf
        best = int(np.argmax(gains))
        if gains[best] <= STALL_GAIN:
            break
        unused[best] = False
        f_cur += float(gains[best])
        hit = m_pool[:, best] > 0.0
        term[hit] *= 1.0 - spec.rate
        selected.append(int(pool[best]))
        trace.append(f_cur)
        if f_cur >= threshold:
            break
        if not unused.any():
            break

    return _finish(problem, true_spec, selected, trace, threshold, f_cur >= threshold)


def _trace_over(spec: _TeachingGeometry, ids: Sequence[int]) -> list[float]:
    trace = []
    for k in range(1, len(ids) + 1):
        trace.append(teaching_objective(spec, ids[:k]))
    return trace


def _grouped_search(
    spec: _TeachingGeometry,
    groups: list[list[int]],
    group_cols: np.ndarray,
    threshold: float,
    max_size: int,
) -> Optional[tuple[int, ...]]:
    """Exact search over duplicate-prediction groups.

    Subsets that select the same number of examples from each group have
    identical F, so it suffices to enumerate per-group count vectors.  The
    witness for a qualifying count vector takes the smallest ids within each
    group, which is exactly the subset that plain lexicographic enumeration
    would encounter first.
    """
    w = np.asarray(spec.prior) * np.asarray(spec.errors)
    best_size: Optional[int] = None
    best_rep: Optional[tuple[int, ...]] = None
    product = itertools.product(*(range(len(g) + 1) for g in groups))
    while True:
        block = list(itertools.islice(product, _CHUNK))
        if not block:
            break
        counts = np.array(block, dtype=np.float64)
        totals = counts.sum(axis=1).astype(np.intp)
        m = counts @ group_cols.T
        f_vals = (w * (1.0 - _survival(spec.rate, m))).sum(axis=1)
        ok = (f_vals >= threshold) & (totals >= 1) & (totals <= max_size)
        for row in np.nonzero(ok)[0]:
            total = int(totals[row])
            if best_size is not None and total > best_size:
                continue
            rep = tuple(sorted(itertools.chain.from_iterable(
                g[: int(c)] for g, c in zip(groups, block[row])
            )))
            if best_size is None or total < best_size or rep < best_rep:
                best_size, best_rep = total, rep
    return best_rep


def _subset_search(
    spec: _TeachingGeometry,
    pool: Sequence[int],
    m_pool: np.ndarray,
    threshold: float,
    max_size: int,
) -> Optional[tuple[int, ...]]:
    """Plain by-size lexicographic subset scan, vectorized in chunks."""
    n = len(pool)
    w = np.asarray(spec.prior) * np.asarray(spec.errors)
    d_pool = m_pool.sum(axis=1)
    m_pool_t = m_pool.T.astype(np.float64)
    for size in range(1, max_size + 1):
        # Best case per hypothesis caps the count at min(size, available);
        # sizes that cannot reach the threshold even then are skipped.
        f_ub = float((w * (1.0 - _survival(spec.rate, np.minimum(size, d_pool)))).sum())
        if f_ub < threshold - 1e-12:
            continue
        comb = itertools.combinations(range(n), size)
        while True:
            block = list(itertools.islice(comb, _CHUNK))
            if not block:
                break
            idx = np.array(block, dtype=np.intp)
            counts = m_pool_t[idx].sum(axis=1)
            f_vals = (w * (1.0 - _survival(spec.rate, counts))).sum(axis=1)
            hits = np.nonzero(f_vals >= threshold)[0]
            if hits.size:
                first = idx[int(hits[0])]
                return tuple(int(pool[i]) for i in first)
    return None


def brute_force_teach(
    problem: TeachingProblem,
    max_size: Optional[int] = None,
    true_spec: Optional[_TeachingGeometry] = None,
) -> TeachingOutcome:
    """Exact minimum-cardinality teaching set.

    Enumerates subsets by increasing size and lexicographic id order within
    a size, returning the first qualifying subset, so the witness is a
    canonical minimum.  Pool examples with identical contradiction patterns
    are collapsed into groups first; when that collapsed space is small the
    search cost is independent of raw pool size, otherwise raw pools are
    capped at ``MAX_POOL`` ids.
    """
    spec = problem.spec
    pool = list(problem.pool)
    if max_size is None:
        max_size = len(pool)
    if max_size > len(pool):
        raise ValueError("max_size cannot exceed the pool size")
    threshold = stopping_threshold(spec, problem.epsilon)
    if 0.0 >= threshold:
        return _finish(problem, true_spec, (), (), threshold, True)

    cols = spec.columns_for(pool)
    m_pool = spec.mismatch[:, cols]

    grouped: dict[bytes, list[int]] = {}
    for j, pid in enumerate(pool):
        grouped.setdefault(m_pool[:, j].tobytes(), []).append(pid)
    groups = sorted(grouped.values(), key=lambda g: g[0])
    space = 1
    for g in groups:
        space *= len(g) + 1
        if space > MAX_GROUPED_SPACE:
            break

    # Duplicate collapse pays off when it genuinely shrinks the search; raw
    # subset enumeration (vectorized) wins when patterns are mostly distinct.
    use_grouped = space <= MAX_GROUPED_SPACE and (
        len(groups) < len(pool) or len(pool) > MAX_POOL
    )
    if use_grouped:
        pos = {pid: j for j, pid in enumerate(pool)}
        group_cols = np.stack(
            [m_pool[:, pos[g[0]]].astype(np.float64) for g in groups]
        ).T
        witness = _grouped_search(spec, groups, group_cols, threshold, max_size)
    elif len(pool) <= MAX_POOL:
        witness = _subset_search(spec, pool, m_pool, threshold, max_size)
    else:
        raise PoolCapacityError(
            f"pool of {len(pool)} with {len(groups)} distinct patterns is too "
            f"large for exact search (cap {MAX_POOL})"
        )

    if witness is None:
        return _finish(problem, true_spec, (), (), threshold, False)
    return _finish(
        problem, true_spec, witness, _trace_over(spec, witness), threshold, True
    )


def random_teach(
    problem: TeachingProblem,
    size: int,
    seed: int,
    true_spec: Optional[_TeachingGeometry] = None,
) -> TeachingOutcome:
    """Uniform without-replacement baseline of the given size.

    Deterministic given the seed; the selection is reported in ascending id
    order.
    """
    if size < 0 or size > len(problem.pool):
        raise ValueError(f"size must lie in [0, {len(problem.pool)}], got {size}")
    rng = np.random.default_rng(seed)
    picked = sorted(
        int(i) for i in rng.choice(np.array(problem.pool), size=size, replace=False)
    ) if size else []
    threshold = stopping_threshold(problem.spec, problem.epsilon)
    trace = _trace_over(problem.spec, picked)
    final_f = trace[-1] if trace else 0.0
    return _finish(problem, true_spec, picked, trace, threshold, final_f >= threshold)
