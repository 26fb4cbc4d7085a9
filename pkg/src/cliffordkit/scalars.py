"""Exact scalars: rationals, Gaussian rationals, and the float escape hatch.

Rationals are plain :class:`fractions.Fraction`. Gaussian rationals are
pairs of fractions. Floats and complex numbers only show up on the
exponential path and are carried around as ordinary Python numbers.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

__all__ = [
    "GaussianRational",
    "I",
    "as_exact",
    "conj",
    "format_rational",
    "is_exact",
    "parse_rational",
    "parse_scalar",
    "scalar_to_json",
    "scalar_from_json",
    "real_part",
    "imag_part",
]


class GaussianRational:
    """A complex number ``re + im*i`` with rational parts.

    Arithmetic with ints, Fractions and other Gaussian rationals stays exact.
    Mixing in a float or complex drops to Python's ``complex``.
    """

    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        self.real = Fraction(real)
        self.imag = Fraction(imag)

    @classmethod
    def _raw(cls, real: Fraction, imag: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.real = real
        obj.imag = imag
        return obj

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.real, -self.imag)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.real * self.real + self.imag * self.imag

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __bool__(self) -> bool:
        return bool(self.real) or bool(self.imag)

    def __neg__(self):
        return GaussianRational._raw(-self.real, -self.imag)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._raw(self.real + other.real, self.imag + other.imag)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.real + other, self.imag)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._raw(self.real - other.real, self.imag - other.imag)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.real - other, self.imag)
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(other - self.real, -self.imag)
        if isinstance(other, (float, complex)):
            return other - complex(self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.real, self.imag, other.real, other.imag
            return GaussianRational._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.real * other, self.imag * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            n = other.norm()
            if not n:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return self * GaussianRational._raw(other.real / n, -other.imag / n)
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return GaussianRational._raw(self.real / other, self.imag / other)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(Fraction(other), Fraction(0)) / self
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        result = GaussianRational._raw(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.real == other.real and self.imag == other.imag
        if isinstance(other, (int, Fraction)):
            return not self.imag and self.real == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if not self.imag:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __repr__(self):
        return f"GaussianRational({self.real!s}, {self.imag!s})"

    def __str__(self):
        if not self.imag:
            return str(self.real)
        if not self.real:
            return f"{_imag_str(self.imag)}"
        sign = "+" if self.imag > 0 else "-"
        return f"({self.real}{sign}{_imag_str(abs(self.imag))})"


def _imag_str(x: Fraction) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{x}i"


numbers.Complex.register(GaussianRational)

#: The imaginary unit as an exact scalar.
I = GaussianRational(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational))


def as_exact(x):
    """Coerce ints and strings to Fraction; pass exact values through."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, GaussianRational)):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def conj(x):
    """Complex conjugate; the identity on rationals and reals."""
    return x.conjugate()


def real_part(x):
    if isinstance(x, GaussianRational):
        return x.real
    if isinstance(x, complex):
        return x.real
    return x


def imag_part(x):
    if isinstance(x, GaussianRational):
        return x.imag
    if isinstance(x, complex):
        return x.imag
    if isinstance(x, float):
        return 0.0
    return Fraction(0)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    return Fraction(text)


def parse_scalar(text: str):
    """Parse ``"p/q"``, ``"i"``, ``"p/q+r/si"`` style strings."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith("i"):
        return Fraction(s)
    body = s[:-1]
    # split at the last sign that is not the leading one
    cut = max(body.rfind("+", 1), body.rfind("-", 1))
    if cut > 0 and body[cut - 1] not in "eE/":
        re_txt, im_txt = body[:cut], body[cut:]
    else:
        re_txt, im_txt = "0", body
    if im_txt in ("", "+"):
        im_txt = "1"
    elif im_txt == "-":
        im_txt = "-1"
    return GaussianRational(Fraction(re_txt), Fraction(im_txt))


def format_rational(x) -> str:
    """Render an exact rational as ``"p/q"``; floats via ``repr``."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def scalar_to_json(x) -> dict:
    return {"re": format_rational(real_part(x)), "im": format_rational(imag_part(x))}


def scalar_from_json(obj: dict):
    re_txt = obj.get("re", "0")
    im_txt = obj.get("im", "0")
    if _looks_float(re_txt) or _looks_float(im_txt):
        value = complex(float(re_txt), float(im_txt))
        return value.real if value.imag == 0 else value
    re, im = Fraction(re_txt), Fraction(im_txt)
    if im:
        return GaussianRational(re, im)
    return re


def _looks_float(text: str) -> bool:
    return any(ch in text for ch in ".eEn") and "/" not in text
