"""The exterior algebra as a Clifford module, and the symbol/quantization maps.

Wedge multiplication ``epsilon(v)`` and contraction ``iota(v)`` act on
exterior elements; ``c(v) = epsilon(v) - iota(v)`` is a Clifford map on the
exterior algebra. The symbol map sends a Clifford element ``a`` to
``c(a)1`` and quantization is its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .clifford import (
    CLIFFORD,
    EXTERIOR,
    Multivector,
    QuadraticSpace,
    graded_lex_masks,
)
from .errors import MismatchedAlgebra, MismatchedSpace, NotAVector

__all__ = [
    "epsilon",
    "iota",
    "gram_form",
    "clifford_action_on_exterior",
    "ExteriorOperator",
    "symbol",
    "quantize",
    "grade_decompose",
    "GradedDecomposition",
    "operator_matrix",
]


def _vector(v: Multivector, space: QuadraticSpace) -> dict:
    if v.space != space:
        raise MismatchedSpace("vector and element live in different spaces")
    if not v.is_vector():
        raise NotAVector(f"expected a 1-vector, got grades {sorted(v.grades())}")
    return v.terms


def _exterior(a: Multivector) -> Multivector:
    if a.algebra != EXTERIOR:
        raise MismatchedAlgebra("expected an exterior element")
    return a


def epsilon(v: Multivector, a: Multivector) -> Multivector:
    """Wedge multiplication ``v ^ a``."""
    _exterior(a)
    _vector(v, a.space)
    return v.with_algebra(EXTERIOR) * a


def iota(v: Multivector, a: Multivector) -> Multivector:
    """Contraction with ``(v, .)``, an antiderivation lowering degree by one.

    On a blade: ``iota(e_i) e_I = q_i * (-1)**(#I below i) * e_{I - i}``.
    A degenerate direction (q_i = 0) contracts to zero.
    """
    _exterior(a)
    vt = _vector(v, a.space)
    q = a.space.q
    out = {}
    for gbit, vc in vt.items():
        i = gbit.bit_length() - 1
        w = q[i]
        if w == 0:
            continue
        below = gbit - 1
        for mask, c in a.terms.items():
            if not mask & gbit:
                continue
            sign = -1 if (mask & below).bit_count() & 1 else 1
            k = mask ^ gbit
            s = out.get(k, 0) + sign * w * vc * c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
    return Multivector._make(a.space, out, EXTERIOR)


def gram_form(a: Multivector, b: Multivector):
    """Bilinear form on the exterior algebra induced by the Gram determinant.

    Different degrees are orthogonal; on the orthogonal blade basis the
    Gram matrix is diagonal with entries ``prod(q_i for i in I)``.
    """
    if a.space != b.space:
        raise MismatchedSpace("elements live in different spaces")
    total = Fraction(0)
    small, large = (a, b) if len(a.terms) <= len(b.terms) else (b, a)
    for mask, c in small.terms.items():
        d = large.terms.get(mask)
        if d is not None:
            total = total + a.space.blade_weight(mask) * c * d
    return total


class ExteriorOperator:
    """A linear operator on the exterior algebra given by a Python callable."""

    def __init__(self, space: QuadraticSpace, fn, parity=None, name=""):
        self.space = space
        self._fn = fn
        self.parity = parity
        self.name = name

    def __call__(self, a: Multivector) -> Multivector:
        if a.space != self.space:
            raise MismatchedSpace("operator and element live in different spaces")
        return self._fn(_exterior(a))

    def __matmul__(self, other: "ExteriorOperator") -> "ExteriorOperator":
        parity = None
        if self.parity is not None and other.parity is not None:
            parity = self.parity * other.parity
        return ExteriorOperator(self.space, lambda a: self(other(a)), parity)

    def matrix(self) -> np.ndarray:
        return operator_matrix(self, self.space)

    def __repr__(self):
        return f"ExteriorOperator({self.name or '?'}, n={self.space.n})"


def operator_matrix(op, space: QuadraticSpace) -> np.ndarray:
    """Dense matrix of ``op`` on the exterior algebra, graded-lex blade order."""
    masks = graded_lex_masks(space.n)
    pos = {m: i for i, m in enumerate(masks)}
    d = len(masks)
    mat = np.empty((d, d), dtype=object)
    mat.fill(Fraction(0))
    for j, m in enumerate(masks):
        image = op(Multivector._make(space, {m: Fraction(1)}, EXTERIOR))
        for k, c in image.terms.items():
            mat[pos[k], j] = c
    return mat


def clifford_action_on_exterior(v: Multivector) -> ExteriorOperator:
    """``c(v) = epsilon(v) - iota(v)``; an odd operator with ``c(v)**2 = -q(v)``."""
    _vector(v, v.space)
    return ExteriorOperator(v.space, lambda a: epsilon(v, a) - iota(v, a), parity=-1, name=f"c({v!r})")


def _act(a: Multivector, x: Multivector) -> Multivector:
    # c(a) x for a Clifford element a, applying generators right to left
    space = a.space
    gens = [Multivector._make(space, {1 << i: Fraction(1)}, CLIFFORD) for i in range(space.n)]
    out = Multivector.zero(space, EXTERIOR)
    for mask, coeff in a.terms.items():
        y = x
        i = space.n - 1
        while i >= 0:
            if mask >> i & 1:
                g = gens[i]
                y = epsilon(g, y) - iota(g, y)
            i -= 1
        out = out + coeff * y
    return out


def symbol(a: Multivector) -> Multivector:
    """The symbol map: act with ``a`` on the unit of the exterior algebra."""
    if a.algebra != CLIFFORD:
        raise MismatchedAlgebra("symbol expects a Clifford element")
    return _act(a, Multivector.scalar(a.space, 1, EXTERIOR))


def quantize(x: Multivector) -> Multivector:
    """Inverse of :func:`symbol`.

    With an orthogonal basis the symbol of ``e_I`` is the wedge blade of the
    same index set, so inversion is a relabelling of the terms.
    """
    return _exterior(x).with_algebra(CLIFFORD)


@dataclass(frozen=True)
class GradedDecomposition:
    """Components ``a_0, ..., a_n`` with ``a_k`` in the k-th quantized degree."""

    components: tuple

    def __getitem__(self, k):
        return self.components[k]

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def total(self) -> Multivector:
        out = self.components[0]
        for c in self.components[1:]:
            out = out + c
        return out

    def nonzero_degrees(self) -> list:
        return [k for k, c in enumerate(self.components) if not c.is_zero()]


def grade_decompose(a: Multivector) -> GradedDecomposition:
    if a.algebra != CLIFFORD:
        raise MismatchedAlgebra("grade_decompose expects a Clifford element")
    s = symbol(a)
    return GradedDecomposition(tuple(quantize(s.grade_part(k)) for k in range(a.space.n + 1)))
