"""Egalitarian objectives and optimal placements on [0, 1].

Agents pay their distance to the nearest facility and enjoy utility
1 - distance. Everything here is exact rational arithmetic.
"""

from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Sequence, TypeVar

from facility_lens.core.domain.errors import EmptyInstance, InvalidBand
from facility_lens.core.domain.models import (
    Bound,
    Instance,
    Objective,
    OptimumReport,
    Placement,
)
from facility_lens.core.domain.rational import ONE, ZERO, parse_location

N = TypeVar("N", Fraction, int)


def make_instance(locations: Iterable) -> Instance:
    """Validate and sort agent reports into an :class:`Instance`."""
    agents = [parse_location(x) for x in locations]
    if not agents:
        raise EmptyInstance()
    return Instance(tuple(sorted(agents)))


def agent_cost(agent: Fraction, placement: Placement) -> Fraction:
    return min(abs(agent - f) for f in placement.facilities)


def farthest_distance(agents: Sequence[N], facilities: Sequence[N]) -> N:
    """Largest distance from a sorted agent sequence to its nearest facility.

    Exact for Fractions and for integers sharing one scale. The distance to
    the nearer of two facilities a <= b only peaks at the outermost agents
    and at the agents either side of (a + b) / 2.
    """
    lo, hi = agents[0], agents[-1]
    if len(facilities) == 1:
        y = facilities[0]
        return max(y - lo, hi - y)
    a, b = facilities

    def nearest(x: N) -> N:
        return min(abs(x - a), abs(x - b))

    worst = max(nearest(lo), nearest(hi))
    i = bisect_right(agents, a + b, key=lambda x: 2 * x)
    if i > 0:
        worst = max(worst, nearest(agents[i - 1]))
    if i < len(agents):
        worst = max(worst, nearest(agents[i]))
    return worst


def max_distance(instance: Instance, placement: Placement) -> Fraction:
    return farthest_distance(instance.agents, placement.facilities)


def evaluate(instance: Instance, placement: Placement, objective: Objective) -> Fraction:
    d = max_distance(instance, placement)
    if objective is Objective.MAX_DISTANCE:
        return d
    return ONE - d


def opt_single(instance: Instance) -> OptimumReport:
    lo, hi = instance.leftmost, instance.rightmost
    d = (hi - lo) / 2
    return OptimumReport(Placement(((lo + hi) / 2,)), d, ONE - d)


def opt_two(instance: Instance) -> OptimumReport:
    """Best contiguous split of the sorted agents into two groups.

    Each group is served from its midpoint; the leftmost split wins ties.
    """
    xs = instance.agents
    if instance.n == 1:
        return OptimumReport(Placement((xs[0], xs[0])), ZERO, ONE)
    best_k, best_d = 0, None
    for k in range(instance.n - 1):
        d = max(xs[k] - xs[0], xs[-1] - xs[k + 1]) / 2
        if best_d is None or d < best_d:
            best_k, best_d = k, d
    left = (xs[0] + xs[best_k]) / 2
    right = (xs[best_k + 1] + xs[-1]) / 2
    return OptimumReport(Placement((left, right)), best_d, ONE - best_d)


def optimum(instance: Instance, facilities: int) -> OptimumReport:
    return opt_single(instance) if facilities == 1 else opt_two(instance)


def truncate(x: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    """Clamp ``x`` into ``[lo, hi]``."""
    if lo > hi:
        raise InvalidBand(lo, hi)
    return max(lo, min(x, hi))


def approximation_ratio(
    value: Fraction, optimum: OptimumReport, objective: Objective
) -> Bound:
    """Ratio of a (possibly expected) objective value to the optimum, >= 1.

    A zero denominator with a positive numerator is unbounded; an exact
    mechanism on a zero-distance optimum scores 1.
    """
    if objective is Objective.MAX_DISTANCE:
        opt = optimum.opt_max_distance
        if opt == 0:
            return Bound.of(1) if value == 0 else Bound.unbounded()
        return Bound(value / opt)
    if value == 0:
        return Bound.unbounded()
    return Bound(optimum.opt_min_utility / value)
