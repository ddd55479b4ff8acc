"""A first teaching problem, end to end.

Builds the smallest interesting task -- a target classifier against its
exact opposite over a dozen points on a line -- and walks through what the
library computes: per-hypothesis scores as examples arrive, the surrogate
objective the teacher maximizes, the stopping threshold, and the greedy and
exact solvers landing on the same ten-example teaching set.

Run:
    python demos/01_teaching_basics.py
"""

import numpy as np

from imperfect_teaching import (
    Hypothesis,
    Instance,
    LabeledExample,
    LearnerState,
    TaskSpec,
    TeachingProblem,
    brute_force_teach,
    greedy_teach,
    learner_error,
    stopping_threshold,
    teaching_objective,
    update,
)

EPS = 0.001


def build_task() -> TaskSpec:
    hypotheses = (
        Hypothesis(id=0, weights=np.array([1.0])),   # target: sign(x)
        Hypothesis(id=1, weights=np.array([-1.0])),  # its exact opposite
    )
    examples = tuple(
        LabeledExample(Instance(i, np.array([1.0 + i])), 1) for i in range(12)
    )
    return TaskSpec(
        hypotheses=hypotheses,
        target_id=0,
        examples=examples,
        prior=np.array([0.5, 0.5]),
        rate=0.5,
    )


def main() -> None:
    spec = build_task()
    print("Task: 2 hypotheses over 12 positive points, rate 0.5, uniform prior")
    print(f"Per-hypothesis error over the pool: {spec.errors}")

    # Watch the learner: each shown example halves the wrong hypothesis'
    # score while the target's score never moves.
    state = LearnerState.initial(spec)
    print("\nstep  scores            expected error")
    for step, ex in enumerate(spec.examples[:6]):
        state = update(state, ex, spec)
        err = learner_error(state, spec.errors)
        print(f"{step + 1:4d}  {np.round(state.scores(), 5)}  {err:.5f}")

    threshold = stopping_threshold(spec, EPS)
    print(f"\nStopping threshold for eps={EPS}: {threshold}")
    print("Objective after k examples (reaches the threshold at k=10):")
    for k in (1, 5, 9, 10):
        print(f"  k={k:2d}: F={teaching_objective(spec, tuple(range(k))):.6f}")

    problem = TeachingProblem(spec, EPS, tuple(range(12)))
    greedy = greedy_teach(problem)
    exact = brute_force_teach(problem)
    print(f"\nGreedy teaching set   : {greedy.selected} (error {greedy.final_error:.6f})")
    print(f"Exact minimum witness : {exact.selected} (error {exact.final_error:.6f})")
    assert len(greedy.selected) == len(exact.selected) == 10


if __name__ == "__main__":
    main()
