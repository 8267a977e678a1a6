from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Optional, Union

from facility_lens.core.domain.errors import OutOfRange

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
HALF = Fraction(1, 2)
ONE = Fraction(1)

_SIX_PLACES = Decimal("0.000001")


def parse_rational(value: RationalLike) -> Fraction:
    """Parse ``"0.1"``, ``"1/4"``, ints or Fractions exactly.

    Floats are refused: a binary float cannot be turned back into the
    decimal the user typed.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}; pass a string or Fraction")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    text = str(value).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational number: {value!r}") from e


def parse_location(value: RationalLike) -> Fraction:
    q = parse_rational(value)
    if q < 0 or q > 1:
        raise OutOfRange(q)
    return q


def parse_rational_list(text: str) -> list[Fraction]:
    """Comma separated list, e.g. ``"0, 0.5, 1/3"``."""
    parts = [p for p in (s.strip() for s in text.split(",")) if p]
    return [parse_rational(p) for p in parts]


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_decimal(q: Fraction) -> str:
    """Six-place rendering derived from the exact value."""
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(q.numerator) / Decimal(q.denominator)
        return str(d.quantize(_SIX_PLACES, rounding=ROUND_HALF_EVEN))


def format_both(q: Optional[Fraction]) -> str:
    if q is None:
        return "inf"
    return f"{format_rational(q)} ({format_decimal(q)})"


def format_list(values: Iterable[Fraction]) -> str:
    return "[" + ", ".join(format_rational(v) for v in values) + "]"


def grid(resolution: int) -> tuple[Fraction, ...]:
    """Points k/resolution for k = 0..resolution."""
    return tuple(Fraction(k, resolution) for k in range(resolution + 1))
