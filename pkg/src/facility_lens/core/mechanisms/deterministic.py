"""Deterministic mechanisms: the generalized median family and MinMaxP variants.

Mechanisms receive the whole instance but, apart from the median family,
only look at the extreme reports x_1 and x_n and at the prediction(s).
"""

from enum import Enum
from fractions import Fraction
from typing import Sequence

from facility_lens.core.domain.errors import (
    EmptyList,
    InvalidGamma,
    InvalidLambda,
    PhantomCountMismatch,
)
from facility_lens.core.domain.models import (
    Instance,
    PhantomProfile,
    Placement,
    Prediction,
    PredictionPair,
)
from facility_lens.core.domain.rational import HALF, ONE, ZERO
from facility_lens.core.objectives import truncate

QUARTER = Fraction(1, 4)


class Preset(str, Enum):
    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"
    MEDIAN = "median"
    MID_OR_NEAREST = "midornearest"


def median_of(values: Sequence[Fraction]) -> Fraction:
    """Lower median: the z_i with fewer than ceil(p/2) values strictly below
    it and at most floor(p/2) strictly above it."""
    if not values:
        raise EmptyList()
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def gen_median(instance: Instance, phantoms: PhantomProfile) -> Placement:
    if len(phantoms) != instance.n - 1:
        raise PhantomCountMismatch(instance.n, len(phantoms))
    return Placement((median_of(instance.agents + phantoms.phantoms),))


def preset_phantoms(name: Preset, n: int) -> PhantomProfile:
    name = Preset(name)
    if name is Preset.LEFTMOST:
        return PhantomProfile.constant(ZERO, n - 1)
    if name is Preset.RIGHTMOST:
        return PhantomProfile.constant(ONE, n - 1)
    if name is Preset.MEDIAN:
        zeros = n // 2
        return PhantomProfile((ZERO,) * zeros + (ONE,) * (n - 1 - zeros))
    return PhantomProfile.constant(HALF, n - 1)


def preset(instance: Instance, name: Preset) -> Placement:
    return gen_median(instance, preset_phantoms(name, instance.n))


def min_max_p(instance: Instance, prediction: Prediction) -> Placement:
    """The prediction, clamped into [x_1, x_n]."""
    return Placement((truncate(prediction.value, instance.leftmost, instance.rightmost),))


def check_gamma(gamma: Fraction) -> Fraction:
    if gamma < 0 or gamma > HALF:
        raise InvalidGamma(gamma)
    return gamma


def check_lambda(lam: Fraction) -> Fraction:
    if lam < 0 or lam > QUARTER:
        raise InvalidLambda(lam)
    return lam


def min_max_p_gamma(instance: Instance, prediction: Prediction, gamma: Fraction) -> Placement:
    """MinMaxP after censoring the prediction into [gamma, 1 - gamma]."""
    check_gamma(gamma)
    censored = Prediction(truncate(prediction.value, gamma, ONE - gamma))
    return min_max_p(instance, censored)


def min_max_2p(instance: Instance, predictions: PredictionPair) -> Placement:
    left = min_max_p(instance, predictions.left).facilities[0]
    right = min_max_p(instance, predictions.right).facilities[0]
    return Placement((left, right))


def censor_pair(predictions: PredictionPair, lam: Fraction) -> PredictionPair:
    """Left prediction into [lam, 1 - 3 lam], right into [3 lam, 1 - lam]."""
    check_lambda(lam)
    left = truncate(predictions.left.value, lam, ONE - 3 * lam)
    right = truncate(predictions.right.value, 3 * lam, ONE - lam)
    # the bands are nested so censoring keeps left <= right
    assert left <= right, (left, right)
    return PredictionPair(Prediction(left), Prediction(right))


def min_max_2p_lambda(instance: Instance, predictions: PredictionPair, lam: Fraction) -> Placement:
    return min_max_2p(instance, censor_pair(predictions, lam))


def broken_third(instance: Instance) -> Placement:
    """Facility a third of the way from x_1 to x_n. Manipulable on purpose."""
    lo, hi = instance.leftmost, instance.rightmost
    return Placement((lo + (hi - lo) / 3,))
