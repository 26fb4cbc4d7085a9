"""Supercommutators, the bivector Lie algebra, exponentials and the spin group.

``supercommutator`` works on anything with a ``parity`` attribute, a
``parity_split()`` method and ``*`` as the algebra product, so the same
function serves Clifford elements and operator matrices.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .clifford import CLIFFORD, Multivector, QuadraticSpace, star
from .errors import (
    DegenerateForm,
    InconsistentSystem,
    NonInvertible,
    NotABivector,
    NotAVector,
    NotClosed,
    NotEven,
    SeriesDiverged,
)
from .exterior import grade_decompose, iota, quantize, symbol
from .linalg import rank, solve
from .scalars import GaussianRational, is_exact

__all__ = [
    "supercommutator",
    "inner_derivation_sides",
    "jacobi_sides",
    "contraction_identity_sides",
    "contraction_identity_check",
    "ad_matrix",
    "PiMultiple",
    "GroupElement",
    "clifford_exp",
    "Ad",
    "structure_constants",
    "commuting_split",
    "levi_civita",
]


def supercommutator(a, b):
    """``ab + ba`` when both are odd, ``ab - ba`` otherwise; bilinear on mixed input.

    If one argument is homogeneous, the other only needs its parity twist
    (even part minus odd part): ``[[a, b]] = ab - twist(b) a`` for odd ``a``.
    """
    pa, pb = a.parity, b.parity
    if pa is not None and pb is not None:
        if pa == -1 and pb == -1:
            return a * b + b * a
        return a * b - b * a
    if pa is not None:
        return a * b - (b.parity_twist() if pa == -1 else b) * a
    if pb is not None:
        return a * b - b * (a.parity_twist() if pb == -1 else a)
    a0, a1 = a.parity_split()
    return supercommutator(a0, b) + supercommutator(a1, b)


def _koszul(a, b) -> int:
    if a.parity is None or b.parity is None:
        raise ValueError("sign rules need parity-homogeneous arguments")
    return -1 if a.parity == -1 and b.parity == -1 else 1


def inner_derivation_sides(a, b, c):
    """``[[a, bc]]`` and ``[[a, b]] c +- b [[a, c]]`` (minus when a and b are odd)."""
    lhs = supercommutator(a, b * c)
    rhs = supercommutator(a, b) * c + (b * supercommutator(a, c)) * _koszul(a, b)
    return lhs, rhs


def jacobi_sides(a, b, c):
    """``[[a, [[b, c]]]] - [[[[a, b]], c]]`` and ``+- [[b, [[a, c]]]]`` (minus when a and b are odd)."""
    lhs = supercommutator(a, supercommutator(b, c)) - supercommutator(supercommutator(a, b), c)
    rhs = supercommutator(b, supercommutator(a, c)) * _koszul(a, b)
    return lhs, rhs


def contraction_identity_sides(v: Multivector, a: Multivector):
    """Both sides of ``-1/2 [[v, a]] = quantize(iota(v) symbol(a))``."""
    lhs = supercommutator(v, a) * Fraction(-1, 2)
    rhs = quantize(iota(v, symbol(a)))
    return lhs, rhs


def contraction_identity_check(v: Multivector, a: Multivector) -> bool:
    if not v.is_vector():
        raise NotAVector("first argument must be a 1-vector")
    lhs, rhs = contraction_identity_sides(v, a)
    return lhs == rhs


def _require_bivector(a: Multivector):
    if a.is_zero():
        return
    degrees = grade_decompose(a).nonzero_degrees()
    if degrees != [2]:
        raise NotABivector(f"element has quantized degrees {degrees}, expected [2]")


def ad_matrix(a: Multivector) -> np.ndarray:
    """Matrix of ``v -> [a, v]`` on the generator basis; column j is ``[a, e_j]``.

    The result is the mixed tensor ``A[i, j]``; lower the row index with the
    diagonal form to get the antisymmetric ``G @ A``.
    """
    space = a.space
    if space.is_degenerate:
        raise DegenerateForm("ad is only an isomorphism onto so(V) for a nondegenerate form")
    if not all(is_exact(c) for c in a.terms.values()):
        raise TypeError("ad_matrix needs exact coefficients")
    _require_bivector(a)
    n = space.n
    mat = np.empty((n, n), dtype=object)
    mat.fill(Fraction(0))
    for j in range(n):
        ej = Multivector._make(space, {1 << j: Fraction(1)}, CLIFFORD)
        image = supercommutator(a, ej)
        for i, c in enumerate(image.vector_coords()):
            mat[i, j] = c
    return mat


def levi_civita(*idx) -> int:
    """Sign of the permutation ``idx`` of ``0..k-1``; 0 if an index repeats."""
    if len(set(idx)) != len(idx):
        return 0
    sign = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


# -- exponentials -------------------------------------------------------------


@dataclass(frozen=True)
class PiMultiple:
    """The real number ``coefficient * pi``, kept symbolic so cos/sin can be exact."""

    coefficient: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    def __float__(self):
        return float(self.coefficient) * math.pi

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PiMultiple(self.coefficient * other)
        return float(self) * other

    __rmul__ = __mul__

    def __repr__(self):
        return f"{self.coefficient}*pi"


_QUARTER_COS = {0: 1, 1: 0, 2: -1, 3: 0}
_QUARTER_SIN = {0: 0, 1: 1, 2: 0, 3: -1}


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _real_exact(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, GaussianRational) and not x.imag:
        return x.real
    return None


@dataclass(frozen=True)
class GroupElement:
    """An even Clifford element produced by the exponential map."""

    element: Multivector
    provenance: str  # "closed-form" or "series"
    exact: bool

    def star(self) -> "GroupElement":
        return GroupElement(star(self.element), self.provenance, self.exact)

    def unitarity_defect(self) -> float:
        """``max |g g* - 1|`` over coefficients; 0.0 exactly for exact elements."""
        d = self.element * star(self.element) - 1
        if self.exact:
            return 0.0 if d.is_zero() else d.max_abs()
        return d.max_abs()

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        prov = self.provenance if self.provenance == other.provenance else "mixed"
        return GroupElement(self.element * other.element, prov, self.exact and other.exact)


def _weighted_norm(a: Multivector) -> float:
    # submultiplicative for the blade product: weight e_I by prod(max(1, |q_i|))
    weights = [max(1.0, abs(float(x))) for x in a.space.q]
    total = 0.0
    for mask, c in a.terms.items():
        w = 1.0
        i = 0
        m = mask
        while m:
            if m & 1:
                w *= weights[i]
            m >>= 1
            i += 1
        total += abs(complex(c)) * w
    return total


def _to_float(c):
    if isinstance(c, GaussianRational):
        return complex(c) if c.imag else float(c.real)
    if isinstance(c, Fraction):
        return float(c)
    return c


def clifford_exp(
    a: Multivector,
    t=1,
    *,
    max_degree: int = 40,
    tolerance: float = 1e-12,
    mode: str = "auto",
) -> GroupElement:
    """``exp(t * a)`` for an even element ``a``.

    ``mode="auto"`` uses the closed form ``cosh(t*s) + sinh(t*s)/s * a`` when
    ``a*a = s**2`` is a scalar and falls back to the Taylor series
    otherwise. The closed form is exact when ``a*a`` is a negative rational
    square and ``t`` is a multiple of pi/2 (see :class:`PiMultiple`), or
    when ``a*a == 0`` with rational ``t``.
    """
    if a.algebra != CLIFFORD:
        raise NotEven("exponentials live in the Clifford algebra")
    if a.parity != 1:
        raise NotEven("clifford_exp needs an even element")
    if mode not in ("auto", "closed", "series"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "series":
        sq = a * a
        if set(sq.terms) <= {0}:
            return _closed_form(a, t, sq.scalar_part())
        if mode == "closed":
            raise ValueError("closed form needs a*a to be a scalar")
    return _series(a, t, max_degree, tolerance)


def _closed_form(a: Multivector, t, lam) -> GroupElement:
    one = Multivector.scalar(a.space, 1)
    lam_r = _real_exact(lam)
    if a.is_zero() or (isinstance(t, (int, Fraction)) and t == 0):
        return GroupElement(one, "closed-form", True)
    if lam_r is not None and lam_r == 0 and isinstance(t, (int, Fraction)):
        return GroupElement(one + a * Fraction(t), "closed-form", True)
    if lam_r is not None and lam_r < 0 and isinstance(t, PiMultiple):
        mu = _rational_sqrt(-lam_r)
        if mu is not None:
            theta = t.coefficient * mu
            if (2 * theta).denominator == 1:
                quarter = int(2 * theta) % 4
                c, s = _QUARTER_COS[quarter], _QUARTER_SIN[quarter]
                return GroupElement(one * c + a * (Fraction(s) / mu), "closed-form", True)
    # float closed form
    tf = float(t)
    root = cmath.sqrt(complex(lam))
    if root == 0:
        cc, ss = 1.0, tf
    else:
        cc = cmath.cosh(tf * root)
        ss = cmath.sinh(tf * root) / root
    if lam_r is not None:
        cc, ss = cc.real, ss.real
    elem = one.map_coefficients(lambda x: x * cc) + a.map_coefficients(lambda x: _to_float(x) * ss)
    return GroupElement(elem, "closed-form", False)


def _series(a: Multivector, t, max_degree: int, tolerance: float) -> GroupElement:
    tf = float(t)
    A = a.map_coefficients(lambda c: _to_float(c) * tf)
    norm = _weighted_norm(A)
    total = Multivector.scalar(a.space, 1.0)
    term = total
    bound = math.inf
    for k in range(1, max_degree + 1):
        term = (term * A) / k
        total = total + term
        # Lagrange tail bound for the remaining terms
        bound = norm ** (k + 1) / math.factorial(k + 1) * math.exp(norm)
        if bound < tolerance * 1e-4:
            break
    if bound >= tolerance:
        raise SeriesDiverged(
            f"remainder bound {bound:.3e} not below {tolerance:.1e} after {max_degree} terms"
        )
    return GroupElement(total, "series", False)


def Ad(g, v: Multivector) -> Multivector:
    """Adjoint action ``g v g^-1`` of a spin element on a vector."""
    elem = g.element if isinstance(g, GroupElement) else g
    if not v.is_vector():
        raise NotAVector("Ad acts on 1-vectors")
    inv = star(elem)
    check = elem * inv - 1
    exact = all(is_exact(c) for c in elem.terms.values())
    if not (check.is_zero() if exact else check.max_abs() < 1e-9):
        if set(elem.terms) == {0}:
            inv = Multivector.scalar(elem.space, 1 / elem.terms[0])
        else:
            raise NonInvertible("element does not satisfy g g* = 1")
    if exact:
        return elem * v * inv
    return elem * v.map_coefficients(_to_float) * inv


# -- Lie algebra structure ----------------------------------------------------


def structure_constants(basis) -> np.ndarray:
    """``c[i, j, k]`` with ``[b_i, b_j] = sum_k c[i, j, k] b_k``."""
    basis = list(basis)
    if not basis:
        return np.empty((0, 0, 0), dtype=object)
    for b in basis:
        _require_bivector(b)
    blades = sorted({m for b in basis for m in b.terms})
    col = {m: i for i, m in enumerate(blades)}
    # rows: blades, columns: basis elements
    A = [[b.terms.get(m, Fraction(0)) for b in basis] for m in blades]
    if rank(A, len(basis)) != len(basis):
        raise ValueError("basis elements are linearly dependent")
    k = len(basis)
    out = np.empty((k, k, k), dtype=object)
    out.fill(Fraction(0))
    for i in range(k):
        for j in range(k):
            br = supercommutator(basis[i], basis[j])
            if any(m not in col for m in br.terms):
                raise NotClosed(f"[b_{i}, b_{j}] leaves the span of the basis")
            rhs = [br.terms.get(m, Fraction(0)) for m in blades]
            try:
                coeffs = solve(A, rhs)
            except InconsistentSystem:
                raise NotClosed(f"[b_{i}, b_{j}] leaves the span of the basis") from None
            for kk, c in enumerate(coeffs):
                out[i, j, kk] = c
    return out


def commuting_split(basis, central: Multivector):
    """Project a basis with the central idempotents ``(1 +- z)/2`` of an involution z."""
    half = Fraction(1, 2)
    plus = [(b + central * b) * half for b in basis]
    minus = [(b - central * b) * half for b in basis]
    return plus, minus
