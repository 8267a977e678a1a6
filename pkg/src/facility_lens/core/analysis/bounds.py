"""Closed-form consistency and robustness bounds, one pair per (family, objective).

These are the stated bounds. Grid searches compare against them and report
a contradiction when exact evaluation beats them; nothing here is adjusted
to fit a measurement.
"""

from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from facility_lens.core.domain.config import Family, MechanismSpec, family_info
from facility_lens.core.domain.errors import UnknownFamily
from facility_lens.core.domain.models import Bound, Objective
from facility_lens.core.domain.rational import HALF, ONE

INF = Bound.unbounded()


class BoundPair(NamedTuple):
    consistency: Bound
    robustness: Bound


class SweepRow(NamedTuple):
    param: Fraction
    consistency: Bound
    robustness: Bound


def _pair(c, r) -> BoundPair:
    def as_bound(v) -> Bound:
        return v if isinstance(v, Bound) else Bound.of(v)

    return BoundPair(as_bound(c), as_bound(r))


def _recip(numerator: Fraction, denominator: Fraction) -> Bound:
    return INF if denominator == 0 else Bound(Fraction(numerator) / denominator)


def _min_max_p(objective: Objective) -> BoundPair:
    if objective is Objective.MAX_DISTANCE:
        return _pair(1, 2)
    return _pair(1, INF)


def _min_max_p_gamma(g: Fraction, objective: Objective) -> BoundPair:
    if g == 0:
        return _min_max_p(objective)
    if objective is Objective.MAX_DISTANCE:
        return _pair(2, 2)
    return _pair((2 - g) / (2 - 2 * g), (1 + g) / (2 * g))


def _lrm_p(d: Fraction, objective: Objective) -> BoundPair:
    if objective is Objective.MAX_DISTANCE:
        return _pair(1 + d, 2 - d)
    return BoundPair(_recip(ONE, 1 - d), _recip(ONE, d))


def _lrmt_p(d: Fraction, objective: Objective) -> BoundPair:
    if objective is Objective.MAX_DISTANCE:
        return _pair(1 + 2 * d, 2)
    return BoundPair(_recip(Fraction(2), 2 - d), _recip(Fraction(2), 3 * d))


def _min_max_2p(objective: Objective) -> BoundPair:
    if objective is Objective.MAX_DISTANCE:
        return _pair(1, INF)
    return _pair(1, Fraction(3, 2))


def _min_max_2p_lambda(lam: Fraction, objective: Objective) -> BoundPair:
    if lam == 0:
        return _min_max_2p(objective)
    if objective is Objective.MAX_DISTANCE:
        return _pair(INF, INF)
    return _pair((2 - lam) / (2 - 2 * lam), (3 + 2 * lam) / (2 * (1 + 2 * lam)))


def _rand_ends_2p(t: Fraction, objective: Objective) -> BoundPair:
    if objective is Objective.MAX_DISTANCE:
        consistency = (3 + 4 * t) / 3
        return _pair(consistency, consistency if t == HALF else INF)
    return _pair(Fraction(9) / (9 - 4 * t), Fraction(9) / (2 * (3 + t)))


def phantom_ratio(z: Fraction) -> Bound:
    """Min-utility ratio forced by a phantom at ``z``: (1 + m)/(2m), m = min(z, 1 - z)."""
    m = min(z, 1 - z)
    return _recip(1 + m, 2 * m)


def _gen_median(phantoms: tuple[Fraction, ...], objective: Objective) -> BoundPair:
    if not phantoms:
        return _pair(1, 1)
    if objective is Objective.MAX_DISTANCE:
        return _pair(2, 2)
    worst = max(phantom_ratio(min(phantoms)), phantom_ratio(max(phantoms)))
    return BoundPair(worst, worst)


def _preset(objective: Objective) -> BoundPair:
    if objective is Objective.MAX_DISTANCE:
        return _pair(2, 2)
    return _pair(INF, INF)


def closed_form_bounds(spec: MechanismSpec, objective: Objective) -> BoundPair:
    """(consistency, robustness) as stated for ``spec`` under ``objective``."""
    objective = Objective(objective)
    f, p = spec.family, spec.param
    if f is Family.MIN_MAX_P:
        return _min_max_p(objective)
    if f is Family.MIN_MAX_P_GAMMA:
        return _min_max_p_gamma(p, objective)
    if f is Family.MID_OR_NEAREST:
        return _min_max_p_gamma(HALF, objective)
    if f in (Family.LEFTMOST, Family.RIGHTMOST, Family.MEDIAN):
        return _preset(objective)
    if f is Family.GEN_MEDIAN:
        return _gen_median(tuple(spec.phantoms), objective)
    if f is Family.LRM:
        return _lrm_p(HALF, objective)
    if f is Family.LRM_P:
        return _lrm_p(p, objective)
    if f is Family.LRMT:
        return _lrmt_p(HALF, objective)
    if f is Family.LRMT_P:
        return _lrmt_p(p, objective)
    if f is Family.MIN_MAX_2P:
        return _min_max_2p(objective)
    if f is Family.MIN_MAX_2P_LAMBDA:
        return _min_max_2p_lambda(p, objective)
    if f is Family.RAND_ENDS:
        return _rand_ends_2p(HALF, objective)
    if f is Family.RAND_ENDS_2P:
        return _rand_ends_2p(p, objective)
    raise UnknownFamily(f, "no closed-form bound")


def tradeoff_sweep(
    family: Family, param_values: Iterable, objective: Objective
) -> list[SweepRow]:
    """closed_form_bounds at every parameter value, in ascending order."""
    family = Family(family)
    info = family_info(family)
    if not info.parameterized:
        raise UnknownFamily(family, "not a parameterized family")
    rows = []
    for value in sorted({Fraction(v) for v in param_values}):
        spec = MechanismSpec(family=family, param=value)
        c, r = closed_form_bounds(spec, objective)
        rows.append(SweepRow(value, c, r))
    return rows


def sweep_grid(family: Family, steps: int) -> list[Fraction]:
    """``steps + 1`` evenly spaced legal values of the family parameter."""
    upper: Optional[Fraction] = family_info(family).upper
    if upper is None:
        raise UnknownFamily(family, "not a parameterized family")
    return [upper * k / steps for k in range(steps + 1)]
