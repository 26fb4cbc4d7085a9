"""Dense exact operator matrices on graded modules.

Entries are Gaussian rationals stored as two integer numerator arrays over
one shared positive denominator, so products run on Python integers.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch
from .scalars import GaussianRational, as_exact, scalar_to_json

__all__ = ["OperatorMatrix"]


def _int_array(d: int) -> np.ndarray:
    out = np.empty((d, d), dtype=object)
    out.fill(0)
    return out


def _split(x):
    """``(re, im)`` as Fractions for an exact scalar."""
    if isinstance(x, GaussianRational):
        return x.real, x.imag
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(0)
    if isinstance(x, (str, bool)):
        return _split(as_exact(x))
    raise TypeError(f"operator matrices hold exact scalars, got {x!r}")


def _scalar(re: Fraction, im: Fraction):
    return GaussianRational._raw(re, im) if im else re


class OperatorMatrix:
    """A d x d matrix of Gaussian rationals acting on a Z2-graded space.

    ``grading[i]`` is the parity (+1/-1) of basis vector i. ``*`` is the
    matrix product, mirroring the algebra product on Multivector so both
    types work with :func:`cliffordkit.spin.supercommutator`.
    """

    __slots__ = ("re", "im", "den", "grading")

    def __init__(self, data, grading=None):
        rows = [list(r) for r in data]
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise DimensionMismatch("operator matrices are square")
        parts = [[_split(x) for x in r] for r in rows]
        den = 1
        for r in parts:
            for a, b in r:
                den = math.lcm(den, a.denominator, b.denominator)
        re, im = _int_array(d), _int_array(d)
        for i, r in enumerate(parts):
            for j, (a, b) in enumerate(r):
                re[i, j] = a.numerator * (den // a.denominator)
                im[i, j] = b.numerator * (den // b.denominator)
        if grading is None:
            grading = (1,) * d
        grading = tuple(int(g) for g in grading)
        if len(grading) != d or any(g not in (1, -1) for g in grading):
            raise DimensionMismatch("grading must list +1/-1 for every basis vector")
        self.re, self.im, self.den, self.grading = re, im, den, grading
        self._normalize()

    @classmethod
    def _raw(cls, re, im, den, grading, normalize=True):
        obj = object.__new__(cls)
        obj.re, obj.im, obj.den, obj.grading = re, im, den, grading
        if normalize:
            obj._normalize()
        return obj

    def _normalize(self):
        g = math.gcd(self.den, *self.re.reshape(-1), *self.im.reshape(-1))
        if g > 1:
            self.re = self.re // g
            self.im = self.im // g
            self.den //= g

    @classmethod
    def identity(cls, grading) -> "OperatorMatrix":
        d = len(grading)
        re = _int_array(d)
        for i in range(d):
            re[i, i] = 1
        return cls._raw(re, _int_array(d), 1, tuple(grading), False)

    @classmethod
    def zero(cls, grading) -> "OperatorMatrix":
        d = len(grading)
        return cls._raw(_int_array(d), _int_array(d), 1, tuple(grading), False)

    @classmethod
    def elementary(cls, r: int, c: int, grading) -> "OperatorMatrix":
        out = cls.zero(grading)
        out.re[r, c] = 1
        return out

    @property
    def d(self) -> int:
        return self.re.shape[0]

    def __getitem__(self, idx):
        i, j = idx
        return _scalar(Fraction(self.re[i, j], self.den), Fraction(self.im[i, j], self.den))

    @property
    def data(self) -> np.ndarray:
        """Entries as an object array of exact scalars."""
        out = np.empty((self.d, self.d), dtype=object)
        for i in range(self.d):
            for j in range(self.d):
                out[i, j] = self[i, j]
        return out

    def rows(self) -> list:
        return [[self[i, j] for j in range(self.d)] for i in range(self.d)]

    def flat(self) -> list:
        return [self[i, j] for i in range(self.d) for j in range(self.d)]

    # grading

    def _mask(self, even: bool) -> np.ndarray:
        g = np.array(self.grading)
        same = np.equal.outer(g, g)
        return same if even else ~same

    def _nonzero(self) -> np.ndarray:
        return (self.re != 0) | (self.im != 0)

    @property
    def parity(self):
        """+1 even, -1 odd, None mixed; the zero matrix counts as even."""
        nz = self._nonzero()
        has_even = bool(np.any(nz & self._mask(True)))
        has_odd = bool(np.any(nz & self._mask(False)))
        if has_even and has_odd:
            return None
        return -1 if has_odd else 1

    def parity_split(self):
        m = self._mask(True)
        out = []
        for keep in (m, ~m):
            re, im = _int_array(self.d), _int_array(self.d)
            re[keep] = self.re[keep]
            im[keep] = self.im[keep]
            out.append(OperatorMatrix._raw(re, im, self.den, self.grading))
        return tuple(out)

    def parity_twist(self) -> "OperatorMatrix":
        """Even part minus odd part."""
        s = np.where(self._mask(True), 1, -1).astype(object)
        return OperatorMatrix._raw(self.re * s, self.im * s, self.den, self.grading, False)

    def parity_label(self) -> str:
        return {1: "even", -1: "odd", None: "mixed"}[self.parity]

    # arithmetic

    def _check(self, other):
        if other.grading != self.grading:
            raise DimensionMismatch("operators act on differently graded spaces")

    def _combine(self, other, sign):
        self._check(other)
        l = math.lcm(self.den, other.den)
        a, b = l // self.den, l // other.den
        return OperatorMatrix._raw(self.re * a + sign * other.re * b, self.im * a + sign * other.im * b, l, self.grading)

    def __add__(self, other):
        if isinstance(other, OperatorMatrix):
            return self._combine(other, 1)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, OperatorMatrix):
            return self._combine(other, -1)
        return NotImplemented

    def __neg__(self):
        return OperatorMatrix._raw(-self.re, -self.im, self.den, self.grading, False)

    def _scale(self, x):
        a, b = _split(x)
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        p = a.numerator * (den // a.denominator)
        q = b.numerator * (den // b.denominator)
        # (re + i im)(p + i q)
        return OperatorMatrix._raw(self.re * p - self.im * q, self.re * q + self.im * p, self.den * den, self.grading)

    def __mul__(self, other):
        if isinstance(other, OperatorMatrix):
            self._check(other)
            re = self.re.dot(other.re) - self.im.dot(other.im)
            im = self.re.dot(other.im) + self.im.dot(other.re)
            return OperatorMatrix._raw(re, im, self.den * other.den, self.grading)
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return self._scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return self._scale(other)
        return NotImplemented

    __matmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, OperatorMatrix):
            return (
                self.grading == other.grading
                and self.den == other.den
                and bool(np.all(self.re == other.re))
                and bool(np.all(self.im == other.im))
            )
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not bool(np.any(self._nonzero()))

    def adjoint(self) -> "OperatorMatrix":
        """Conjugate transpose (adjoint in an orthonormal basis)."""
        return OperatorMatrix._raw(self.re.T.copy(), -self.im.T, self.den, self.grading, False)

    def scalar_value(self):
        """The ``s`` with ``self == s * identity``, or None."""
        s = self[0, 0]
        if self == OperatorMatrix.identity(self.grading) * s:
            return s
        return None

    def apply(self, x) -> list:
        return [sum((self[i, j] * x[j] for j in range(self.d)), Fraction(0)) for i in range(self.d)]

    def permuted(self, order) -> "OperatorMatrix":
        """Matrix in the reordered basis where new vector i is old vector ``order[i]``."""
        ix = np.ix_(list(order), list(order))
        grading = tuple(self.grading[i] for i in order)
        return OperatorMatrix._raw(self.re[ix].copy(), self.im[ix].copy(), self.den, grading, False)

    def transformed(self, T: "OperatorMatrix", T_inv: "OperatorMatrix") -> "OperatorMatrix":
        """``T_inv @ self @ T``."""
        return T_inv * OperatorMatrix._raw(self.re, self.im, self.den, T.grading, False) * T

    def kron_identity(self, copies: int, grading) -> "OperatorMatrix":
        """``1 (x) self`` as a block-diagonal matrix with the given grading."""
        d = self.d
        re, im = _int_array(d * copies), _int_array(d * copies)
        for w in range(copies):
            re[w * d:(w + 1) * d, w * d:(w + 1) * d] = self.re
            im[w * d:(w + 1) * d, w * d:(w + 1) * d] = self.im
        return OperatorMatrix._raw(re, im, self.den, tuple(grading), False)

    def max_abs(self) -> float:
        return max(abs(complex(x)) for x in self.flat()) if self.d else 0.0

    def to_json(self, basis=None) -> dict:
        out = {
            "d": self.d,
            "entries": [[scalar_to_json(x) for x in row] for row in self.rows()],
            "parity": self.parity_label(),
        }
        if basis is not None:
            out["basis"] = [list(b) for b in basis]
        return out

    def __repr__(self):
        rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in self.rows()]
        return "OperatorMatrix([" + ", ".join(rows) + "])"
