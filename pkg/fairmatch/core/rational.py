"""
Exact rationals and group vectors.

Fraction already reduces and keeps den > 0; what it does not do is stop
growing. checked() enforces the configured bit budget so that a blow-up
surfaces as RationalOverflowError instead of a silently huge number.
"""

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from fairmatch.core.config import settings
from fairmatch.core.errors import InvalidParameterError, RationalOverflowError

GroupVector = tuple[Fraction, ...]

RationalLike = Union[Fraction, int, str]


def checked(q: Fraction, bits: int | None = None) -> Fraction:
    limit = bits or settings.RATIONAL_BITS
    if q.numerator.bit_length() >= limit or q.denominator.bit_length() >= limit:
        raise RationalOverflowError(f"rational {q} exceeds {limit}-bit components")
    return q


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return checked(value)
    if isinstance(value, bool):
        raise InvalidParameterError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return checked(Fraction(value))
    if isinstance(value, str):
        return parse_rational(value)
    raise InvalidParameterError(f"not a rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    try:
        return checked(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidParameterError(f"not a rational: {text!r}") from e


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# ---- group vectors ----

def vector(values: Iterable[RationalLike]) -> GroupVector:
    return tuple(as_rational(v) for v in values)


def parse_vector(text: str) -> GroupVector:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise InvalidParameterError(f"empty vector: {text!r}")
    return tuple(parse_rational(p) for p in parts)


def format_vector(v: Sequence[Fraction]) -> str:
    return ",".join(str(x) for x in v)


def zeros(k: int) -> GroupVector:
    return (Fraction(0),) * k


def ones(k: int) -> GroupVector:
    return (Fraction(1),) * k


def unit(k: int, i: int) -> GroupVector:
    return tuple(Fraction(int(j == i)) for j in range(k))


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> GroupVector:
    return tuple(checked(x + y) for x, y in zip(a, b, strict=True))


def scale(c: Fraction, a: Sequence[Fraction]) -> GroupVector:
    return tuple(checked(c * x) for x in a)


def axpy(x: Sequence[Fraction], t: Fraction, r: Sequence[Fraction]) -> GroupVector:
    """x + t*r"""
    return tuple(checked(xi + t * ri) for xi, ri in zip(x, r, strict=True))


def l1(a: Sequence[Fraction]) -> Fraction:
    return sum(a, Fraction(0))


def common_denominator(values: Iterable[Fraction]) -> int:
    return math.lcm(1, *(q.denominator for q in values))


def variance(a: Sequence[Fraction]) -> Fraction:
    k = len(a)
    mean = l1(a) / k
    return sum(((x - mean) ** 2 for x in a), Fraction(0)) / k
