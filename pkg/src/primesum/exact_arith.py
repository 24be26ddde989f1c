"""Exact rationals and dense polynomials in lambda = log log n.

Rationals are :class:`fractions.Fraction`, which already keeps a positive,
gcd-reduced denominator and represents zero as 0/1.  This module adds the
string format used by the CLI and coefficient files, and :class:`LogLogPoly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

BigRational = Fraction
RationalLike = Union[Fraction, int, str]

# Extra bits carried inside evaluations before the final rounding.
GUARD_BITS = 32


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; accepts a unicode minus sign."""
    cleaned = text.strip().replace("−", "-")
    if not cleaned:
        raise ValueError("empty rational")
    num, sep, den = cleaned.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_mpf(value: Fraction):
    """Convert at the current mpmath precision (one rounding)."""
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


@dataclass(frozen=True)
class LogLogPoly:
    """Polynomial in lambda with exact coefficients, lowest degree first.

    The zero polynomial is the empty coefficient tuple; trailing zeros are
    stripped on construction, so equal polynomials compare equal.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c: RationalLike) -> "LogLogPoly":
        return cls((Fraction(c),))

    @classmethod
    def monomial(cls, degree: int, c: RationalLike = 1) -> "LogLogPoly":
        return cls((0,) * degree + (Fraction(c),))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __add__(self, other: "LogLogPoly") -> "LogLogPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return LogLogPoly(tuple(self[k] + other[k] for k in range(n)))

    def __neg__(self) -> "LogLogPoly":
        return LogLogPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "LogLogPoly") -> "LogLogPoly":
        return self + (-other)

    def __mul__(self, other: "LogLogPoly") -> "LogLogPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return LogLogPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            for b, cb in enumerate(other.coeffs):
                out[a + b] += ca * cb
        return LogLogPoly(tuple(out))

    __rmul__ = __mul__

    def scale(self, c: RationalLike) -> "LogLogPoly":
        c = Fraction(c)
        return LogLogPoly(tuple(c * x for x in self.coeffs))

    def __call__(self, x):
        return poly_eval(self, x)

    def serialize(self) -> str:
        """Comma-separated coefficients, lowest degree first ("0" for zero)."""
        if self.is_zero():
            return "0"
        return ",".join(format_rational(c) for c in self.coeffs)

    @classmethod
    def parse(cls, text: str) -> "LogLogPoly":
        return cls(tuple(parse_rational(t) for t in text.split(",")))

    def __str__(self) -> str:
        return format_poly(self)


def poly_add(p: LogLogPoly, q: LogLogPoly) -> LogLogPoly:
    return p + q


def poly_scale(p: LogLogPoly, c: RationalLike) -> LogLogPoly:
    return p.scale(c)


def poly_eval(p: LogLogPoly, x):
    """Horner evaluation at the current mpmath precision.

    Runs with guard bits and rounds once at the end, so the result is the
    correctly rounded value for all practical inputs.
    """
    prec = mpmath.mp.prec
    with mpmath.workprec(prec + GUARD_BITS):
        x = to_mpf(x) if isinstance(x, Fraction) else mpmath.mpf(x)
        acc = mpmath.mpf(0)
        for c in reversed(p.coeffs):
            acc = acc * x + to_mpf(c)
    return +acc


def format_poly(p: LogLogPoly, var: str = "x") -> str:
    """Human-readable form, highest degree first: ``x^2 - 7*x + 29/2``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = format_rational(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{format_rational(mag)}*{power}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)

