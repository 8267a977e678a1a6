from fractions import Fraction
from typing import Callable, NamedTuple, Optional

from facility_lens.core.domain.config import (
    Family,
    FamilyInfo,
    MechanismSpec,
    PredictionKind,
)
from facility_lens.core.domain.errors import UnknownFamily
from facility_lens.core.domain.models import (
    Instance,
    Lottery,
    Objective,
    Outcome,
    Placement,
    Prediction,
    PredictionPair,
    Predictions,
)
from facility_lens.core.mechanisms import deterministic as det
from facility_lens.core.mechanisms import randomized as rnd
from facility_lens.core.domain.rational import ZERO
from facility_lens.core.objectives import agent_cost, evaluate

Runner = Callable[[Instance, Optional[Predictions]], Outcome]


def _runner(spec: MechanismSpec) -> Runner:
    f, p = spec.family, spec.param
    if f is Family.MIN_MAX_P:
        return lambda inst, pred: det.min_max_p(inst, pred)
    if f is Family.MIN_MAX_P_GAMMA:
        return lambda inst, pred: det.min_max_p_gamma(inst, pred, p)
    if f is Family.MID_OR_NEAREST:
        return lambda inst, _: det.preset(inst, det.Preset.MID_OR_NEAREST)
    if f is Family.LEFTMOST:
        return lambda inst, _: det.preset(inst, det.Preset.LEFTMOST)
    if f is Family.RIGHTMOST:
        return lambda inst, _: det.preset(inst, det.Preset.RIGHTMOST)
    if f is Family.MEDIAN:
        return lambda inst, _: det.preset(inst, det.Preset.MEDIAN)
    if f is Family.GEN_MEDIAN:
        profile = spec.phantom_profile
        return lambda inst, _: det.gen_median(inst, profile)
    if f is Family.BROKEN_THIRD:
        return lambda inst, _: det.broken_third(inst)
    if f is Family.LRM:
        return lambda inst, _: rnd.lrm(inst)
    if f is Family.LRMT:
        return lambda inst, _: rnd.lrmt(inst)
    if f is Family.LRM_P:
        return lambda inst, pred: rnd.lrm_p(inst, pred, p)
    if f is Family.LRMT_P:
        return lambda inst, pred: rnd.lrmt_p(inst, pred, p)
    if f is Family.MIN_MAX_2P:
        return lambda inst, pred: det.min_max_2p(inst, pred)
    if f is Family.MIN_MAX_2P_LAMBDA:
        return lambda inst, pred: det.min_max_2p_lambda(inst, pred, p)
    if f is Family.RAND_ENDS:
        return lambda inst, _: rnd.rand_ends(inst)
    if f is Family.RAND_ENDS_2P:
        return lambda inst, pred: rnd.rand_ends_2p(inst, pred, p)
    raise UnknownFamily(f)


class PredictionSplit(NamedTuple):
    """A prediction-using family as a fixed-weight mixture.

    The outcome is ``free(instance)`` with probability ``free_weight`` and
    ``guided(instance, predictions)`` otherwise. ``guided`` is deterministic
    and reads only x_1, x_n and the predictions.
    """

    free_weight: Fraction
    free: Optional[Callable[[Instance], Outcome]]
    guided: Callable[[Instance, Predictions], Placement]


def _split(spec: MechanismSpec) -> Optional[PredictionSplit]:
    f, p = spec.family, spec.param
    if f is Family.MIN_MAX_P:
        return PredictionSplit(ZERO, None, det.min_max_p)
    if f is Family.MIN_MAX_P_GAMMA:
        return PredictionSplit(ZERO, None, lambda inst, pred: det.min_max_p_gamma(inst, pred, p))
    if f is Family.LRM_P:
        return PredictionSplit(2 * p, rnd.lrm, det.min_max_p)
    if f is Family.LRMT_P:
        return PredictionSplit(2 * p, rnd.lrmt, det.min_max_p)
    if f is Family.MIN_MAX_2P:
        return PredictionSplit(ZERO, None, det.min_max_2p)
    if f is Family.MIN_MAX_2P_LAMBDA:
        return PredictionSplit(ZERO, None, lambda inst, pred: det.min_max_2p_lambda(inst, pred, p))
    if f is Family.RAND_ENDS_2P:
        return PredictionSplit(2 * p, rnd.rand_ends, det.min_max_2p)
    return None


class Mechanism:
    """A resolved :class:`MechanismSpec`, callable on (instance, predictions)."""

    def __init__(self, spec: MechanismSpec):
        self.spec = spec
        self.info: FamilyInfo = spec.info
        self._run = _runner(spec)
        self.split = _split(spec)

    @property
    def name(self) -> str:
        return self.spec.label()

    @property
    def uses_predictions(self) -> bool:
        return self.info.predictions is not PredictionKind.NONE

    def check_predictions(self, predictions: Optional[Predictions]) -> None:
        kind = self.info.predictions
        if kind is PredictionKind.SINGLE and not isinstance(predictions, Prediction):
            raise ValueError(f"{self.name} needs a single prediction")
        if kind is PredictionKind.PAIR and not isinstance(predictions, PredictionPair):
            raise ValueError(f"{self.name} needs a pair of predictions")

    def __call__(self, instance: Instance, predictions: Optional[Predictions] = None) -> Outcome:
        if self.uses_predictions:
            self.check_predictions(predictions)
        return self._run(instance, predictions)

    def value(
        self, instance: Instance, predictions: Optional[Predictions], objective: Objective
    ) -> Fraction:
        """Objective value, in expectation for randomized families."""
        return outcome_value(self(instance, predictions), instance, objective)


def outcome_value(outcome: Outcome, instance: Instance, objective: Objective) -> Fraction:
    if isinstance(outcome, Lottery):
        return rnd.expected_value(outcome, instance, objective)
    return evaluate(instance, outcome, objective)


def outcome_cost(outcome: Outcome, agent: Fraction) -> Fraction:
    if isinstance(outcome, Lottery):
        return rnd.expected_cost(outcome, agent)
    return agent_cost(agent, outcome)

