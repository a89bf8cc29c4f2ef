"""Exact Gaussian-rational arithmetic.

Coefficient values of an Euler product live either in Q(i), where every
operation is exact, or in complex floating point. :class:`ComplexRational`
covers the first case.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

__all__ = ["ComplexRational", "parse_complex", "Value", "is_exact", "to_complex"]


class ComplexRational:
    """An element ``re + im*i`` of Q(i) with reduced fractional parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexRational is immutable")

    @classmethod
    def coerce(cls, other) -> "ComplexRational":
        if isinstance(other, ComplexRational):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other, 0)
        raise TypeError(f"cannot coerce {type(other).__name__} to ComplexRational")

    # arithmetic
    def __add__(self, other):
        try:
            o = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __truediv__(self, other):
        try:
            o = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * o.conjugate()
        return ComplexRational(num.re / n, num.im / n)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ComplexRational(1) / (self ** (-k))
        result = ComplexRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2`` (exact)."""
        return self.re * self.re + self.im * self.im

    # predicates
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_nonnegative_real(self) -> bool:
        return self.im == 0 and self.re >= 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __eq__(self, other):
        if isinstance(other, ComplexRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ComplexRational({self})"

    def __str__(self):
        return format_complex(self)


def format_complex(z: ComplexRational) -> str:
    """Render ``z`` in the spec-file literal syntax, e.g. ``"1/2-3/4 i"``."""
    if z.im == 0:
        return str(z.re)
    if z.re == 0:
        return f"{z.im} i"
    sign = "+" if z.im > 0 else "-"
    return f"{z.re}{sign}{abs(z.im)} i"


_RAT = r"\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(
    rf"""^\s*
    (?:(?P<re>[+-]?\s*{_RAT})(?![\d/]|\s*\*?\s*i))?      # optional real part
    \s*
    (?:(?P<isign>[+-]?)\s*(?P<im>{_RAT})?\s*\*?\s*i)?  # optional imaginary part
    \s*$""",
    re.VERBOSE,
)


def parse_complex(text: str) -> ComplexRational:
    """Parse a Gaussian-rational literal.

    Accepted forms include ``"1"``, ``"-1/2"``, ``"i"``, ``"-i"``, ``"3/4 i"``,
    ``"1/2+1/3 i"`` and ``"3/5-4/5i"``.
    """
    if not isinstance(text, str):
        raise ValueError(f"complex literal must be a string, got {text!r}")
    m = _COMPLEX_RE.match(text)
    if not m or not text.strip() or (m.group("re") is None and m.group("im") is None and "i" not in text):
        raise ValueError(f"malformed complex literal {text!r}")
    try:
        re_part = Fraction(m.group("re").replace(" ", "")) if m.group("re") else Fraction(0)
        mag = Fraction(m.group("im")) if m.group("im") else Fraction(1)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
    im_part = Fraction(0)
    if text.rstrip().endswith("i"):
        if m.group("re") is not None and m.group("isign") == "":
            raise ValueError(f"malformed complex literal {text!r}")
        im_part = -mag if m.group("isign") == "-" else mag
    return ComplexRational(re_part, im_part)


Value = Union[ComplexRational, complex, float]


def is_exact(v) -> bool:
    return isinstance(v, ComplexRational)


def to_complex(v) -> complex:
    return complex(v)
