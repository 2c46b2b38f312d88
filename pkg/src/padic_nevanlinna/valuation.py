"""p-adic valuations on the rationals and extended logarithms.

All logarithms in this package are taken to base ``p``: for a rational
``x`` we work with ``log_p |x|_p = -v_p(x)``, which is again rational (an
integer, in fact).  Zero maps to the bottom element ``-inf``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

from sympy import isprime

__all__ = [
    "PrimeConfig",
    "ExtLog",
    "NEG_INF",
    "as_fraction",
    "valuation",
    "log_abs",
]


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or fraction string to ``Fraction``; floats are rejected."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, float):
        raise TypeError(f"floating-point value {x!r} not accepted; use an exact fraction")
    if isinstance(x, (Rational, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class PrimeConfig:
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise TypeError("p must be an integer")
        if self.p < 2 or not isprime(self.p):
            raise ValueError("p must be prime")


@total_ordering
class ExtLog:
    """An element of Q extended by a bottom element ``-inf``.

    ``value`` is ``None`` for ``-inf``.  Addition absorbs into ``-inf`` and the
    ordering puts ``-inf`` below every rational, so ``max`` behaves as the
    tropical sum.
    """

    __slots__ = ("value",)

    def __init__(self, value: Fraction | int | str | None):
        object.__setattr__(self, "value", None if value is None else as_fraction(value))

    def __setattr__(self, name, value):
        raise AttributeError("ExtLog is immutable")

    @property
    def is_neg_inf(self) -> bool:
        return self.value is None

    def __add__(self, other):
        if not isinstance(other, ExtLog):
            other = ExtLog(other)
        if self.value is None or other.value is None:
            return NEG_INF
        return ExtLog(self.value + other.value)

    __radd__ = __add__

    def __eq__(self, other):
        if isinstance(other, ExtLog):
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, ExtLog):
            other = ExtLog(other)
        if self.value is None:
            return other.value is not None
        if other.value is None:
            return False
        return self.value < other.value

    def __hash__(self):
        return hash(("ExtLog", self.value))

    def __repr__(self):
        return "ExtLog(-inf)" if self.value is None else f"ExtLog({self.value})"

    def __str__(self):
        return "-inf" if self.value is None else str(self.value)


NEG_INF = ExtLog(None)


def valuation(x, p: int) -> int | None:
    """``v_p(x)`` for rational ``x``; ``None`` stands for ``+inf`` (x = 0)."""
    x = as_fraction(x)
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def log_abs(x, cfg: PrimeConfig) -> ExtLog:
    """``log_p |x|_p`` as an :class:`ExtLog`; ``-inf`` exactly when ``x == 0``."""
    v = valuation(x, cfg.p)
    return NEG_INF if v is None else ExtLog(-v)
