"""Why misjudging the learning rate is the dangerous mistake.

Two explicit constructions make the failure sharp.  Over-estimating the
rate by 0.1 on a two-hypothesis task: the teacher confidently stops after
k = 21 examples while the true learner still holds about half its belief on
the wrong hypothesis.  Under-estimating: the teacher's set inflates to the
size a perfect teacher would need for a 100x stricter error target.

Run:
    python demos/04_rate_noise_worst_cases.py
"""

from imperfect_teaching import (
    TeachingProblem,
    adversarial_rate_over,
    adversarial_rate_under,
    brute_force_teach,
    greedy_teach,
)


def main() -> None:
    print("Over-estimation: teacher assumes rate 0.6, learner has 0.5")
    adv = adversarial_rate_over(eps=0.01, rate=0.5, delta=0.1)
    pool = tuple(range(len(adv.spec.examples)))
    outcome = greedy_teach(TeachingProblem(adv.view, 0.01, pool), true_spec=adv.spec)
    print(f"  prior on the wrong hypothesis: {adv.spec.prior[1 - adv.spec.target_id]:.9f}")
    print(f"  teacher stops after k = {adv.k} examples, believing error <= 0.01")
    print(f"  true learner error: {outcome.final_error:.4f} "
          f"(closed form {adv.predicted_error:.4f})")

    print("\nUnder-estimation: teacher assumes rate 0.4, target eps 0.1")
    advu = adversarial_rate_under(eps=0.1, eps_hat=0.001, rate=0.5, delta=0.1)
    pool = tuple(range(len(advu.spec.examples)))
    view_set = brute_force_teach(TeachingProblem(advu.view, 0.1, pool), true_spec=advu.spec)
    oracle = brute_force_teach(TeachingProblem(advu.spec, 0.001, pool), true_spec=advu.spec)
    print(f"  imperfect teacher needs {len(view_set.selected)} examples for eps = 0.1")
    print(f"  a perfect teacher needs {len(oracle.selected)} for eps = 0.001")
    print(f"  both equal the closed-form k = {advu.k}: the noise costs as much "
          f"as a 100x stricter target")


if __name__ == "__main__":
    main()
