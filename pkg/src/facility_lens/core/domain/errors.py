from fractions import Fraction
from typing import Any


class FacilityLensError(ValueError):
    """Base class for every domain error raised by facility-lens."""


class EmptyInstance(FacilityLensError):
    def __init__(self):
        super().__init__("an instance needs at least one agent")


class OutOfRange(FacilityLensError):
    def __init__(self, value: Any, lo: Any = 0, hi: Any = 1):
        self.value = value
        super().__init__(f"location {_show(value)} is outside [{_show(lo)}, {_show(hi)}]")


class InvalidBand(FacilityLensError):
    def __init__(self, lo: Any, hi: Any):
        self.lo, self.hi = lo, hi
        super().__init__(f"empty band: lower end {_show(lo)} exceeds upper end {_show(hi)}")


class EmptyList(FacilityLensError):
    def __init__(self):
        super().__init__("median of an empty list")


class PhantomCountMismatch(FacilityLensError):
    def __init__(self, agents: int, phantoms: int):
        self.agents, self.phantoms = agents, phantoms
        super().__init__(f"{agents} agents need {agents - 1} phantoms, got {phantoms}")


class _ParameterOutOfRange(FacilityLensError):
    symbol = "param"
    upper = "1/2"

    def __init__(self, value: Any):
        self.value = value
        super().__init__(f"{self.symbol} = {_show(value)} is outside [0, {self.upper}]")


class InvalidGamma(_ParameterOutOfRange):
    symbol = "gamma"


class InvalidDelta(_ParameterOutOfRange):
    symbol = "delta"


class InvalidTheta(_ParameterOutOfRange):
    symbol = "theta"


class InvalidLambda(_ParameterOutOfRange):
    symbol = "lambda"
    upper = "1/4"


class UnknownFamily(FacilityLensError):
    def __init__(self, family: Any, detail: str = ""):
        self.family = family
        msg = f"unknown mechanism family: {family}"
        super().__init__(f"{msg} ({detail})" if detail else msg)


class InvalidCase(FacilityLensError):
    pass


class InvalidLottery(FacilityLensError):
    pass


def _show(value: Any) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)
