"""Exact worst-case witnesses and the phantom counterexample constructors.

A witness is a concrete (instance, predictions) pair together with the
ratio a mechanism is expected to reach on it. Catalogue entries marked
``refutes`` exceed the stated bound for their cell; they are kept next to
the tight witnesses so both are checked the same way.
"""

from fractions import Fraction
from typing import NamedTuple, Optional

from facility_lens.core.analysis.search import SearchMode
from facility_lens.core.domain.config import Family, MechanismSpec
from facility_lens.core.domain.errors import InvalidCase, OutOfRange
from facility_lens.core.domain.models import (
    Bound,
    Instance,
    Objective,
    PhantomProfile,
    Prediction,
    PredictionPair,
    Predictions,
)
from facility_lens.core.domain.rational import HALF, ONE, ZERO
from facility_lens.core.mechanisms.deterministic import gen_median
from facility_lens.core.mechanisms.registry import Mechanism
from facility_lens.core.objectives import approximation_ratio, evaluate, make_instance, optimum

MD = Objective.MAX_DISTANCE
MU = Objective.MIN_UTILITY
C = SearchMode.CONSISTENCY
R = SearchMode.ROBUSTNESS


class Counterexample(NamedTuple):
    instance: Instance
    ratio: Bound
    phantoms: PhantomProfile
    case: str


class Witness(NamedTuple):
    name: str
    spec: MechanismSpec
    objective: Objective
    mode: SearchMode
    instance: Instance
    predictions: Optional[Predictions]
    expected: Bound
    refutes: bool = False


def _uniqueness_case(a: Fraction, n: int) -> Counterexample:
    """A phantom a != 1/2 loses to an agent at the far end."""
    filler = (HALF,) * (n - 2)
    if a < HALF:
        agents = (a,) * (n - 1) + (ONE,)
        m, case = a, "phantom-below-half"
    else:
        agents = (ZERO,) + (a,) * (n - 1)
        m, case = 1 - a, "phantom-above-half"
    ratio = Bound.unbounded() if m == 0 else Bound((1 + m) / (2 * m))
    return Counterexample(make_instance(agents), ratio, PhantomProfile((a,) + filler), case)


def _consistency_case(rho: Fraction, pi: Fraction, n: int) -> Counterexample:
    """Phantoms [rho] + [pi]*(n-2) on an instance whose optimum is pi; pi <= 1/2."""
    phantoms = PhantomProfile((rho,) + (pi,) * (n - 2))
    if rho < pi:
        agents, case = (rho,) * (n - 1) + (2 * pi - rho,), "rho-below-pi"
    elif rho <= 2 * pi:
        agents, case = (2 * pi - rho,) + (rho,) * (n - 1), "rho-between"
    else:
        agents, case = (ZERO,) + (2 * pi,) * (n - 1), "rho-beyond"
    return Counterexample(make_instance(agents), Bound.of(2), phantoms, case)


def _mirror(cx: Counterexample) -> Counterexample:
    return Counterexample(
        make_instance(ONE - x for x in cx.instance.agents),
        cx.ratio,
        PhantomProfile(tuple(ONE - z for z in cx.phantoms.phantoms)),
        cx.case + "-mirrored",
    )


def phantom_counterexample(
    phantom: Fraction, n: int, prediction: Optional[Prediction] = None
) -> Counterexample:
    """Instance on which a generalized median with ``phantom`` does badly.

    Without a prediction: the min-utility ratio (1 + m)/(2m), m = min(a, 1 - a),
    of a phantom a != 1/2. With a non-extreme prediction pi and rho != pi: a
    max-distance ratio of 2 although pi is the exact optimum.
    """
    if n < 2:
        raise InvalidCase(f"counterexamples need at least 2 agents, got {n}")
    if phantom < 0 or phantom > 1:
        raise OutOfRange(phantom)
    if prediction is None:
        if phantom == HALF:
            raise InvalidCase("phantom 1/2 is MidOrNearest itself")
        return _uniqueness_case(phantom, n)
    pi = prediction.value
    if prediction.is_extreme:
        raise InvalidCase(f"prediction {pi} is extreme")
    if phantom == pi:
        raise InvalidCase("phantom equals the prediction")
    if pi <= HALF:
        return _consistency_case(phantom, pi, n)
    return _mirror(_consistency_case(ONE - phantom, ONE - pi, n))


def counterexample_ratio(cx: Counterexample, objective: Objective) -> Bound:
    """Ratio the generalized median with ``cx.phantoms`` actually reaches."""
    placement = gen_median(cx.instance, cx.phantoms)
    opt = optimum(cx.instance, 1)
    return approximation_ratio(evaluate(cx.instance, placement, objective), opt, objective)


def _spec(family: Family, param=None) -> MechanismSpec:
    return MechanismSpec(family=family, param=param)


def _inst(*agents) -> Instance:
    return make_instance(Fraction(a) for a in agents)


def _pair(left, right) -> PredictionPair:
    return PredictionPair.of(Fraction(left), Fraction(right))


def theorem_witnesses() -> list[Witness]:
    """Proof witnesses for the stated bounds, then the refuting instances."""
    q, h, e = Fraction(1, 4), HALF, Fraction(1, 8)
    out = [
        Witness("minmaxp-divergence", _spec(Family.MIN_MAX_P), MU, R,
                _inst(0, 1), Prediction(ZERO), Bound.unbounded()),
        Witness("midornearest-max-distance", _spec(Family.MID_OR_NEAREST), MD, R,
                _inst(0, q), None, Bound.of(2)),
        Witness("midornearest-min-utility", _spec(Family.MID_OR_NEAREST), MU, R,
                _inst(0, h), None, Bound(Fraction(3, 2))),
    ]
    for g in (e, q, h):
        spec = _spec(Family.MIN_MAX_P_GAMMA, g)
        robust = Bound((1 + g) / (2 * g))
        out += [
            Witness(f"minmaxp-gamma-robustness[{g}]", spec, MU, R,
                    _inst(0, 1 - g), Prediction(ONE), robust),
            Witness(f"minmaxp-gamma-robustness-mirrored[{g}]", spec, MU, R,
                    _inst(g, 1), Prediction(ZERO), robust),
            Witness(f"minmaxp-gamma-consistency[{g}]", spec, MU, C,
                    _inst(0, g), Prediction(g / 2), Bound((2 - g) / (2 - 2 * g))),
        ]
    for d in (q, h):
        spec = _spec(Family.LRM_P, d)
        out += [
            Witness(f"lrmp-consistency[{d}]", spec, MU, C, _inst(0, 1), Prediction(h), Bound(1 / (1 - d))),
            Witness(f"lrmp-robustness[{d}]", spec, MU, R, _inst(0, 1), Prediction(ZERO), Bound(1 / d)),
            Witness(f"lrmp-max-distance-consistency[{d}]", spec, MD, C, _inst(0, 1), Prediction(h), Bound(1 + d)),
            Witness(f"lrmp-max-distance-robustness[{d}]", spec, MD, R, _inst(0, 1), Prediction(ZERO), Bound(2 - d)),
        ]
    out += [
        Witness("lrm-min-utility", _spec(Family.LRM), MU, R, _inst(0, 1), None, Bound.of(2)),
        Witness("randends-min-utility", _spec(Family.RAND_ENDS), MU, R,
                _inst(0, h, 1), None, Bound(Fraction(9, 7))),
        Witness("randends-max-distance", _spec(Family.RAND_ENDS), MD, R,
                _inst(0, h, 1), None, Bound(Fraction(5, 3))),
        Witness("randends2p-consistency[1/4]", _spec(Family.RAND_ENDS_2P, q), MU, C,
                _inst(0, h, 1), _pair(0, Fraction(3, 4)), Bound(Fraction(9, 8))),
        Witness("minmax2p-robustness", _spec(Family.MIN_MAX_2P), MU, R,
                _inst(0, h, 1), _pair(0, 1), Bound(Fraction(3, 2))),
    ]
    for lam in (e, q):
        out.append(
            Witness(f"minmax2p-lambda-robustness[{lam}]", _spec(Family.MIN_MAX_2P_LAMBDA, lam), MU, R,
                    _inst(lam, h, 1 - lam), _pair(0, 1), Bound((3 + 2 * lam) / (2 * (1 + 2 * lam))))
        )
    out.append(
        Witness("minmax2p-lambda-max-distance", _spec(Family.MIN_MAX_2P_LAMBDA, q), MD, C,
                _inst(0, 1), _pair(0, 1), Bound.unbounded())
    )
    return out + refuting_witnesses()


def refuting_witnesses() -> list[Witness]:
    """Instances on which exact evaluation beats a stated bound."""
    q, e = Fraction(1, 4), Fraction(1, 8)
    return [
        Witness("lrmt-unanimous", _spec(Family.LRMT), MU, C,
                _inst(0), None, Bound(Fraction(3, 2)), True),
        Witness("lrmtp-unanimous[1/4]", _spec(Family.LRMT_P, q), MU, C,
                _inst(0), Prediction(ZERO), Bound(3 / (3 - 2 * q)), True),
        Witness("lrmt-clustered", _spec(Family.LRMT), MD, R,
                _inst(0, Fraction(1, 20)), None, Bound(Fraction(40, 3)), True),
        Witness("lrmtp-coincident[1/4]", _spec(Family.LRMT_P, q), MD, C,
                _inst(0, 0), Prediction(ZERO), Bound.unbounded(), True),
        Witness("minmax2p-both-left", _spec(Family.MIN_MAX_2P), MU, R,
                _inst(0, 1), _pair(0, 0), Bound.unbounded(), True),
        Witness("minmax2p-lambda-censored-consistency[1/4]", _spec(Family.MIN_MAX_2P_LAMBDA, q), MU, C,
                _inst(0, 1), _pair(0, 1), Bound(1 / (1 - q)), True),
        Witness("minmax2p-lambda-both-left[1/8]", _spec(Family.MIN_MAX_2P_LAMBDA, e), MU, R,
                _inst(0, 1), _pair(0, 0), Bound(1 / (3 * e)), True),
        Witness("randends2p-both-left[1/4]", _spec(Family.RAND_ENDS_2P, q), MU, R,
                _inst(0, 1), _pair(0, 0), Bound(1 / (2 * q)), True),
    ]


def evaluate_witness(witness: Witness) -> Bound:
    """Exact ratio of the witness's mechanism on the witness instance."""
    mechanism = Mechanism(witness.spec)
    opt = optimum(witness.instance, mechanism.info.facilities)
    value = mechanism.value(witness.instance, witness.predictions, witness.objective)
    return approximation_ratio(value, opt, witness.objective)


def find_witness(name: str) -> Witness:
    for witness in theorem_witnesses():
        if witness.name == name:
            return witness
    raise KeyError(name)
