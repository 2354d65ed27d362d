"""Exact scalars: rationals, Gaussian rationals and rational square-root bounds."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Q = Fraction
Scalar = Union[int, Fraction, "GaussianRational"]

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimal and float notation are rejected."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not an exact rational: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(x: Fraction) -> str:
    # str(Fraction) is already lowest terms with positive denominator
    return str(Fraction(x))


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """A complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def coerce(cls, value: Scalar) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(value, 0)

    def __repr__(self) -> str:
        if self.im == 0:
            return f"G({self.re})"
        return f"G({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other: Scalar) -> "GaussianRational":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> "GaussianRational":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> "GaussianRational":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Scalar) -> "GaussianRational":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GaussianRational":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        n = self * o.conjugate()
        return GaussianRational(n.re / d, n.im / d)

    def __rtruediv__(self, other: Scalar) -> "GaussianRational":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> "GaussianRational":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


def _coerce_or_none(value) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value, 0)
    return None


G = GaussianRational
ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)


def sqrt_upper(q: Fraction, bits: int = 64) -> Fraction:
    """Smallest-ish rational ``u`` with ``u*u >= q``; exact for rational squares."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    scale = 1 << bits
    # sqrt(n/d) = sqrt(n*d)/d; bound sqrt(n*d*scale^2) from above by an integer
    s = math.isqrt(n * d * scale * scale)
    if s * s < n * d * scale * scale:
        s += 1
    return Fraction(s, d * scale)


def sqrt_lower(q: Fraction, bits: int = 64) -> Fraction:
    """Largest-ish rational ``l`` with ``l*l <= q``; exact for rational squares."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    scale = 1 << bits
    return Fraction(math.isqrt(n * d * scale * scale), d * scale)


def fraction_upper(x: float) -> Fraction:
    """A rational ``>= x`` with a short 2-adic denominator."""
    if not math.isfinite(x):
        raise ValueError("non-finite float")
    f = Fraction(x)
    scale = 1 << 80
    return Fraction(math.ceil(f * scale), scale)
