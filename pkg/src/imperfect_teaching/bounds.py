"""Closed-form robustness bounds and worst-case rate constructions.

For prior, sample, and feature noise there are closed-form guarantees tying
the true learner error and teaching-set size of an imperfect teacher back to
the target ``eps``:

============  =======================================  ==========================================
noise         error bound (measure 1)                  competitive target eps-hat (measure 2)
============  =======================================  ==========================================
``prior``     eps (1 + d2) / (1 - d1)                  eps (1 - d1) / (1 + d2)
``sample``    (eps Qmax + d2) / Q0*                    (eps Qmin - d2) (1-eta)^(lam d3) / Q0*
``feature``   (eps Qmax + d2) / (Q0* (1-eta)^(lam d1)) (eps Qmin - d2) (1-eta)^(lam d1) / Q0*
============  =======================================  ==========================================

where Qmax/Qmin are extreme prior entries and Q0* the prior mass of the true
target (the denominators use the prior score of the target, not its taught
score).  Rate noise has no such guarantee: :func:`adversarial_rate_over` and
:func:`adversarial_rate_under` build two-hypothesis tasks where any teacher
misjudging the rate by ``delta`` fails on error or on set size, with the
exact closed-form teaching size ``k`` that makes the failure sharp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .core import Hypothesis, Instance, LabeledExample, TaskSpec
from .imperfect import TeacherView, perturb_rate
from .teacher import TeachingOutcome

__all__ = [
    "BoundPair",
    "BoundReport",
    "RateAdversary",
    "adversarial_rate_over",
    "adversarial_rate_under",
    "bound_feature",
    "bound_prior",
    "bound_sample",
    "check_bounds",
]

# Largest adversarial teaching size we will construct; beyond this the prior
# ratio leaves double precision anyway.
K_CAP = 200

# The worst-case constructions put the prior exactly on the reach/no-reach
# boundary; this relative nudge keeps float comparisons off the knife edge
# without moving k.
_RATIO_NUDGE = 1e-9

M1_SLACK = 1e-12


class BoundPair(NamedTuple):
    """An (error bound, competitive eps-hat) pair; ``vacuous`` marks an
    eps-hat that clamped to zero and therefore guarantees nothing."""

    error_bound: float
    eps_hat: float
    vacuous: bool = False


def bound_prior(eps: float, delta1: float, delta2: float) -> BoundPair:
    """Guarantees for multiplicative prior noise with ratio bounds
    [1 - delta1, 1 + delta2]."""
    if not 0.0 <= delta1 < 1.0:
        raise ValueError(f"delta1 must lie in [0, 1), got {delta1}")
    if delta2 < 0.0:
        raise ValueError("delta2 must be non-negative")
    return BoundPair(
        error_bound=eps * (1.0 + delta2) / (1.0 - delta1),
        eps_hat=eps * (1.0 - delta1) / (1.0 + delta2),
    )


def _q_args(q_max: float, q_min: float, q_target: float) -> None:
    if q_target <= 0.0:
        raise ValueError("the target must carry positive prior mass")
    if not 0.0 < q_min <= q_max:
        raise ValueError("prior extremes must satisfy 0 < q_min <= q_max")


def bound_sample(
    eps: float,
    delta2: float,
    delta3: float,
    lam: float,
    rate: float,
    q_max: float,
    q_min: float,
    q_target: float,
) -> BoundPair:
    """Guarantees for a teacher restricted to a sampled example pool.

    ``delta2`` bounds the per-hypothesis error-estimate gap, ``delta3`` the
    perturbation radius at which teaching sets embed into the sample, and
    ``lam`` the smoothness constant.  Valid only for rates below 1.
    """
    if not 0.0 < rate < 1.0:
        raise ValueError(f"rate must lie in (0, 1), got {rate}")
    _q_args(q_max, q_min, q_target)
    error_bound = (eps * q_max + delta2) / q_target
    raw = (eps * q_min - delta2) * (1.0 - rate) ** (lam * delta3) / q_target
    return BoundPair(error_bound, max(raw, 0.0), vacuous=raw <= 0.0)


def bound_feature(
    eps: float,
    delta1: float,
    delta2: float,
    lam: float,
    rate: float,
    q_max: float,
    q_min: float,
    q_target: float,
) -> BoundPair:
    """Guarantees for a teacher planning with a feature map shifted by at
    most ``delta1`` per instance; the error bound picks up an extra
    ``(1 - rate)^(lam * delta1)`` in the denominator, so it diverges as the
    rate approaches 1."""
    if not 0.0 < rate < 1.0:
        raise ValueError(f"rate must lie in (0, 1), got {rate}")
    _q_args(q_max, q_min, q_target)
    factor = (1.0 - rate) ** (lam * delta1)
    error_bound = (eps * q_max + delta2) / (q_target * factor)
    raw = (eps * q_min - delta2) * factor / q_target
    return BoundPair(error_bound, max(raw, 0.0), vacuous=raw <= 0.0)


# --- worst-case constructions for rate noise --------------------------------


@dataclass(frozen=True, eq=False)
class RateAdversary:
    """A two-hypothesis task on which a rate-misjudging teacher fails.

    ``spec`` holds the constructed task (target plus its exact opposite,
    realized as opposing one-dimensional sign classifiers over a pool of
    identically labeled points).  ``k`` is the closed-form teaching size the
    misjudging teacher will use, and ``view`` the teacher's picture of the
    task.  For an over-estimated rate, ``predicted_error`` is the true
    learner error after those k examples, which sits near 1/2 instead of
    near ``eps``.
    """

    spec: TaskSpec
    k: int
    direction: str
    view_rate: float
    predicted_error: float

    @property
    def view(self) -> TeacherView:
        delta = abs(self.view_rate - self.spec.rate)
        return perturb_rate(self.spec, delta, self.direction)


def _two_hypothesis_spec(eps: float, rate: float, view_rate: float, k: int, pool_size: int) -> TaskSpec:
    """Target vs. anti-target over ``pool_size`` positive points, with the
    prior ratio set so the view-rate teacher needs exactly k examples."""
    ratio = eps * (1.0 - _RATIO_NUDGE) / (1.0 - view_rate) ** k
    q_target = 1.0 / (1.0 + ratio)
    hypotheses = (
        Hypothesis(id=0, weights=np.array([1.0])),
        Hypothesis(id=1, weights=np.array([-1.0])),
    )
    examples = tuple(
        LabeledExample(Instance(i, np.array([1.0 + i / pool_size])), 1)
        for i in range(pool_size)
    )
    return TaskSpec(
        hypotheses=hypotheses,
        target_id=0,
        examples=examples,
        prior=np.array([q_target, 1.0 - q_target]),
        rate=rate,
    )


def adversarial_rate_over(
    eps: float,
    rate: float,
    delta: float,
    pool_size: Optional[int] = None,
) -> RateAdversary:
    """Task on which an over-estimated rate leaves the learner near error 1/2.

    The teacher plans with rate + delta, stops after k examples believing the
    anti-target is dead, but the true learner still holds roughly half its
    posterior on it.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    view_rate = rate + delta
    if not (0.0 < rate < 1.0 and 0.0 < view_rate < 1.0):
        raise ValueError("both the rate and rate + delta must lie in (0, 1)")
    if delta <= 0.0:
        raise ValueError("delta must be positive for a worst case to exist")
    log_shrink = math.log1p(-rate) - math.log1p(-view_rate)
    k = math.ceil(math.log(1.0 / eps) / log_shrink)
    if k > K_CAP:
        raise ValueError(f"construction needs k={k} > cap {K_CAP}; widen delta or eps")
    pool_size = pool_size if pool_size is not None else k
    if pool_size < k:
        raise ValueError(f"pool must offer at least k={k} examples")
    spec = _two_hypothesis_spec(eps, rate, view_rate, k, pool_size)
    # True posterior odds of the anti-target after k contradicting examples.
    log_odds = math.log(spec.prior[1] / spec.prior[0]) + k * math.log1p(-rate)
    predicted_error = 1.0 / (1.0 + math.exp(-log_odds))
    return RateAdversary(
        spec=spec, k=k, direction="over", view_rate=view_rate,
        predicted_error=predicted_error,
    )


def adversarial_rate_under(
    eps: float,
    eps_hat: float,
    rate: float,
    delta: float,
    pool_size: Optional[int] = None,
) -> RateAdversary:
    """Task on which an under-estimated rate inflates the teaching set to the
    size a perfect teacher would need for an arbitrarily small ``eps_hat``."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not 0.0 < eps_hat < eps:
        raise ValueError("eps_hat must lie in (0, eps)")
    view_rate = rate - delta
    if not (0.0 < rate < 1.0 and 0.0 < view_rate < 1.0):
        raise ValueError("both the rate and rate - delta must lie in (0, 1)")
    log_growth = math.log1p(-view_rate) - math.log1p(-rate)
    if log_growth <= 0.0:
        raise ValueError("delta must be positive for a worst case to exist")
    k = math.ceil(math.log(eps / eps_hat) / log_growth)
    if k > K_CAP:
        raise ValueError(f"construction needs k={k} > cap {K_CAP}; widen delta")
    pool_size = pool_size if pool_size is not None else k
    if pool_size < k:
        raise ValueError(f"pool must offer at least k={k} examples")
    spec = _two_hypothesis_spec(eps, rate, view_rate, k, pool_size)
    log_odds = math.log(spec.prior[1] / spec.prior[0]) + k * math.log1p(-rate)
    predicted_error = 1.0 / (1.0 + math.exp(-log_odds))
    return RateAdversary(
        spec=spec, k=k, direction="under", view_rate=view_rate,
        predicted_error=predicted_error,
    )


# --- report assembly ---------------------------------------------------------


@dataclass
class BoundReport:
    """One comparison of observed teaching results against the closed forms.

    ``satisfied_m1`` compares the true learner error against the error
    bound; ``satisfied_m2`` compares the imperfect teacher's set size
    against an oracle solved at eps-hat (None when no oracle run or the
    bound is vacuous).  ``conditional_on`` names every empirical quantity
    the bound was computed from.
    """

    kind: str
    eps: float
    delta_params: dict[str, float]
    error_bound: float
    eps_hat: float
    observed_error: float
    observed_size: int
    oracle_size_at_eps_hat: Optional[int]
    satisfied_m1: bool
    satisfied_m2: Optional[bool]
    conditional_on: list[str] = field(default_factory=list)

    def csv_row(self) -> list[str]:
        params = ";".join(f"{k}={v:.12g}" for k, v in sorted(self.delta_params.items()))
        return [
            self.kind,
            repr(self.eps),
            params,
            repr(self.error_bound),
            repr(self.eps_hat),
            repr(self.observed_error),
            str(self.observed_size),
            "" if self.oracle_size_at_eps_hat is None else str(self.oracle_size_at_eps_hat),
            str(self.satisfied_m1),
            "" if self.satisfied_m2 is None else str(self.satisfied_m2),
            ";".join(self.conditional_on),
        ]


CSV_HEADER = (
    "kind,eps,delta_params,error_bound,eps_hat,observed_error,"
    "observed_size,oracle_size,m1,m2,conditional_on"
)


def check_bounds(
    kind: str,
    spec: TaskSpec,
    eps: float,
    delta_params: dict[str, float],
    view_outcome: TeachingOutcome,
    oracle_outcome: Optional[TeachingOutcome] = None,
    oracle_exact: bool = True,
    conditional_on: Optional[list[str]] = None,
) -> BoundReport:
    """Fill a report for one (kind, task, view outcome) triple.

    ``delta_params`` carries the kind-specific noise parameters, including
    any empirically measured ones; measured entries should be echoed in
    ``conditional_on`` by the caller.  When no oracle outcome is supplied
    the measure-2 verdict stays open rather than raising.

    Rate noise has no robustness guarantee, so a ``rate`` report measures
    the outcome against the perfect-teacher yardstick ``eps`` itself;
    worst-case constructions fail it by design.
    """
    prior = np.asarray(spec.prior)
    q_max, q_min = float(prior.max()), float(prior.min())
    q_target = float(prior[spec.target_id])
    if kind == "rate":
        pair = BoundPair(eps, eps, False)
    elif kind == "prior":
        pair = bound_prior(eps, delta_params["delta1"], delta_params["delta2"])
    elif kind == "sample":
        pair = bound_sample(
            eps, delta_params["delta2"], delta_params["delta3"], delta_params["lam"],
            spec.rate, q_max, q_min, q_target,
        )
    elif kind == "feature":
        pair = bound_feature(
            eps, delta_params["delta1"], delta_params["delta2"], delta_params["lam"],
            spec.rate, q_max, q_min, q_target,
        )
    else:
        raise ValueError(f"no closed-form bound exists for kind {kind!r}")

    conditional = list(conditional_on or [])
    if kind == "rate":
        conditional.append("no closed-form guarantee exists for rate noise")
    if pair.vacuous:
        conditional.append("vacuous eps_hat (eps*q_min <= delta2)")
    if oracle_outcome is not None and not oracle_exact:
        conditional.append("approximate oracle (greedy)")

    oracle_size = len(oracle_outcome.selected) if oracle_outcome is not None else None
    if oracle_size is None:
        satisfied_m2: Optional[bool] = None
        if not pair.vacuous:
            conditional.append("incomplete report: no oracle run")
    elif pair.vacuous:
        satisfied_m2 = None
    else:
        satisfied_m2 = len(view_outcome.selected) <= oracle_size

    return BoundReport(
        kind=kind,
        eps=eps,
        delta_params=dict(delta_params),
        error_bound=pair.error_bound,
        eps_hat=pair.eps_hat,
        observed_error=view_outcome.final_error,
        observed_size=len(view_outcome.selected),
        oracle_size_at_eps_hat=oracle_size,
        satisfied_m1=view_outcome.final_error <= pair.error_bound + M1_SLACK,
        satisfied_m2=satisfied_m2,
        conditional_on=conditional,
    )
