"""Randomized mechanisms as exact finite lotteries.

No sampling happens anywhere: a mechanism returns the whole distribution
and objectives are taken in expectation over it. Mixture weights (2 delta,
2 theta) are fixed before the reports are seen.
"""

from fractions import Fraction

from facility_lens.core.domain.errors import InvalidDelta, InvalidTheta
from facility_lens.core.domain.models import (
    Instance,
    Lottery,
    Objective,
    Placement,
    Prediction,
    PredictionPair,
)
from facility_lens.core.domain.rational import HALF, ONE, ZERO
from facility_lens.core.mechanisms.deterministic import min_max_2p, min_max_p
from facility_lens.core.objectives import evaluate, opt_two, truncate

THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)
QUARTER = Fraction(1, 4)
SIXTH = Fraction(1, 6)


def check_delta(delta: Fraction) -> Fraction:
    if delta < 0 or delta > HALF:
        raise InvalidDelta(delta)
    return delta


def check_theta(theta: Fraction) -> Fraction:
    if theta < 0 or theta > HALF:
        raise InvalidTheta(theta)
    return theta


def _ends_and_middle(lo: Fraction, hi: Fraction) -> Lottery:
    return Lottery.from_weights(
        [
            (Placement((lo,)), QUARTER),
            (Placement(((lo + hi) / 2,)), HALF),
            (Placement((hi,)), QUARTER),
        ]
    )


def lrm(instance: Instance) -> Lottery:
    """x_1 w.p. 1/4, the midpoint w.p. 1/2, x_n w.p. 1/4."""
    return _ends_and_middle(instance.leftmost, instance.rightmost)


def lrmt(instance: Instance) -> Lottery:
    """Lrm with both ends truncated into [1/3, 2/3]."""
    y = truncate(instance.leftmost, THIRD, TWO_THIRDS)
    z = truncate(instance.rightmost, THIRD, TWO_THIRDS)
    return _ends_and_middle(y, z)


def _mix(weight: Fraction, randomized: Lottery, fallback: Placement) -> Lottery:
    return Lottery.mixture([(weight, randomized), (ONE - weight, Lottery.point(fallback))])


def lrm_p(instance: Instance, prediction: Prediction, delta: Fraction) -> Lottery:
    check_delta(delta)
    return _mix(2 * delta, lrm(instance), min_max_p(instance, prediction))


def lrmt_p(instance: Instance, prediction: Prediction, delta: Fraction) -> Lottery:
    check_delta(delta)
    return _mix(2 * delta, lrmt(instance), min_max_p(instance, prediction))


def rand_ends(instance: Instance) -> Lottery:
    """Both ends w.p. 1/2, pulled in by 2d w.p. 1/6, by d w.p. 1/3.

    d is the optimal two-facility maximum distance, never more than a
    quarter of x_n - x_1, so every outcome stays inside [x_1, x_n].
    """
    lo, hi = instance.leftmost, instance.rightmost
    d = opt_two(instance).opt_max_distance
    return Lottery.from_weights(
        [
            (Placement((lo, hi)), HALF),
            (Placement((lo + 2 * d, hi - 2 * d)), SIXTH),
            (Placement((lo + d, hi - d)), THIRD),
        ]
    )


def rand_ends_2p(instance: Instance, predictions: PredictionPair, theta: Fraction) -> Lottery:
    check_theta(theta)
    return _mix(2 * theta, rand_ends(instance), min_max_2p(instance, predictions))


def expected_value(lottery: Lottery, instance: Instance, objective: Objective) -> Fraction:
    total = ZERO
    for placement, p in lottery.outcomes:
        total += p * evaluate(instance, placement, objective)
    return total


def expected_cost(lottery: Lottery, agent: Fraction) -> Fraction:
    """Expected distance from ``agent`` to its nearest facility."""
    total = ZERO
    for placement, p in lottery.outcomes:
        total += p * min(abs(agent - f) for f in placement.facilities)
    return total
