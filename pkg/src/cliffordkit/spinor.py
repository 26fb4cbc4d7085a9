"""Complexification, polarization and the spinor module S = ext(V+).

The base space is first rescaled to a complex orthonormal frame
``e'_j = lambda_j e_j`` with all form values 1. The frame generators are
paired as ``f_k^{+-} = e'_{2k-1} -+ i e'_{2k}``; the normalized polarized
vectors are ``e_k^{+-} = f_k^{+-} / sqrt(2)``, which never needs to be
represented because every action matrix only involves the combinations

    c(e'_{2k-1}) = eps_k - iota_k,    c(e'_{2k}) = i (eps_k + iota_k).

Spinors are coordinate vectors on the blades ``e_I^+`` of ``ext(V+)``,
listed in graded-lex order over ``{1..n/2}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from .clifford import (
    CLIFFORD,
    EXTERIOR,
    Multivector,
    QuadraticSpace,
    blade_indices,
    graded_lex_masks,
)
from .errors import (
    BadGrading,
    DegenerateForm,
    IndexOutOfRange,
    MismatchedSpace,
    NonSquareForm,
    NotAVector,
    OddDimension,
    RepeatedIndex,
    WrongSignature,
)
from .exterior import epsilon, iota, operator_matrix, quantize
from .linalg import det, inverse, nullspace, rank
from .operators import OperatorMatrix
from .scalars import I, GaussianRational, conj
from .spin import levi_civita

__all__ = [
    "Complexification",
    "complexify",
    "Polarization",
    "polarize",
    "SpinorContext",
    "spinor_context",
    "clifford_action_matrix",
    "chirality",
    "chirality_from_pairs",
    "spinor_gram",
    "hermitian_form",
    "op_adjoint",
    "GammaMatrices",
    "gamma_matrices",
    "pauli",
    "block_targets",
    "sigma_tensor",
    "sigma_tensor_dirac",
    "TwistedModule",
    "build_twisted",
    "end_s_dimension_check",
]

MINKOWSKI = QuadraticSpace((1, -1, -1, -1))


def _rational_sqrt(x: Fraction):
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _blade_scale(scales, mask: int):
    out = Fraction(1)
    for i in blade_indices(mask):
        out = out * scales[i - 1]
    return out


@dataclass(frozen=True)
class Complexification:
    """Record of the rescaling ``e'_j = scales[j] * e_j`` onto a complex orthonormal frame."""

    base: QuadraticSpace
    scales: tuple
    frame: QuadraticSpace

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def rescaled(self) -> tuple:
        """1-based indices of generators multiplied by a non-real factor."""
        return tuple(j + 1 for j, s in enumerate(self.scales) if isinstance(s, GaussianRational) and s.imag)

    def to_frame(self, a: Multivector) -> Multivector:
        """Rewrite an element of the base algebra in frame blades."""
        if a.space == self.frame:
            return a
        if a.space != self.base:
            raise MismatchedSpace("element does not live in the base space")
        # e_I = e'_I / prod(lambda_i)
        return Multivector(self.frame, {m: c / _blade_scale(self.scales, m) for m, c in a.terms.items()}, a.algebra)

    def from_frame(self, a: Multivector) -> Multivector:
        if a.space != self.frame:
            raise MismatchedSpace("element does not live in the frame space")
        return Multivector(self.base, {m: c * _blade_scale(self.scales, m) for m, c in a.terms.items()}, a.algebra)

    def conjugate(self, a: Multivector) -> Multivector:
        """Complex conjugation, coordinatewise in the frame; returns an element of ``a``'s space."""
        if a.space == self.frame:
            return a.conjugate()
        return self.from_frame(self.to_frame(a).conjugate())


def complexify(space: QuadraticSpace) -> Complexification:
    """Rescale generators so every complex form value is 1.

    A generator with ``q_j < 0`` is multiplied by ``i / sqrt(-q_j)`` and one
    with ``q_j > 0`` by ``1 / sqrt(q_j)``; the square roots must be rational.
    """
    if space.n % 2:
        raise OddDimension(f"spinor modules need even dimension, got n={space.n}")
    if space.is_degenerate:
        raise DegenerateForm("complexification needs all q_i nonzero")
    scales = []
    for qj in space.q:
        root = _rational_sqrt(abs(qj))
        if root is None:
            raise NonSquareForm(f"|q| = {abs(qj)} has no rational square root")
        scales.append(Fraction(1) / root if qj > 0 else GaussianRational(0, Fraction(1) / root))
    return Complexification(space, tuple(scales), QuadraticSpace.euclidean(space.n))


@dataclass(frozen=True)
class Polarization:
    """The isotropic splitting of the complexified frame.

    ``plus[k]`` and ``minus[k]`` are ``f_k^{+-} = e'_{2k-1} -+ i e'_{2k}``,
    i.e. ``sqrt(2)`` times the normalized polarized vectors.
    """

    frame: QuadraticSpace
    plus: tuple
    minus: tuple

    @property
    def m(self) -> int:
        return len(self.plus)

    def pairing(self, k: int, l: int):
        """``(e_k^-, e_l^+)`` for the normalized vectors, 1-based."""
        return self.frame.form(self.minus[k - 1], self.plus[l - 1]) / 2

    def coefficients(self, w: Multivector):
        """``(a, b)`` with ``w = sum a_k f_k^+ / 2 + b_k f_k^- / 2``.

        ``a_k / sqrt(2)`` is the coordinate of ``w`` on ``e_k^+``.
        """
        if w.space != self.frame:
            raise MismatchedSpace("vector must be given in frame coordinates")
        x = w.vector_coords()
        a = [x[2 * k] + I * x[2 * k + 1] for k in range(self.m)]
        b = [x[2 * k] - I * x[2 * k + 1] for k in range(self.m)]
        return a, b

    def split(self, w: Multivector):
        """``(w_plus, w_minus)`` in V+ and V- with ``w = w_plus + w_minus``."""
        a, b = self.coefficients(w)
        half = Fraction(1, 2)
        w_plus = Multivector.zero(self.frame)
        w_minus = Multivector.zero(self.frame)
        for k in range(self.m):
            w_plus = w_plus + self.plus[k] * (a[k] * half)
            w_minus = w_minus + self.minus[k] * (b[k] * half)
        return w_plus, w_minus


def polarize(cx: Complexification) -> Polarization:
    frame = cx.frame
    plus, minus = [], []
    for k in range(frame.n // 2):
        odd = Multivector.blade(frame, [2 * k + 1])
        even = Multivector.blade(frame, [2 * k + 2])
        plus.append(odd - even * I)
        minus.append(odd + even * I)
    return Polarization(frame, tuple(plus), tuple(minus))


def _grading(masks) -> tuple:
    return tuple(-1 if bin(m).count("1") & 1 else 1 for m in masks)


def _chirality_order(masks) -> tuple:
    evens = [i for i, m in enumerate(masks) if bin(m).count("1") % 2 == 0]
    odds = [i for i, m in enumerate(masks) if bin(m).count("1") % 2 == 1]
    return tuple(evens + odds)


@dataclass(frozen=True)
class SpinorContext:
    """The spinor module of a complexified even-dimensional space.

    Build with :func:`spinor_context`. Generator matrices for the frame
    are computed once at construction.
    """

    cx: Complexification
    polarization: Polarization
    basis: tuple  # blade masks over {1..m}, graded-lex
    grading: tuple
    eps: tuple = field(repr=False)
    iotas: tuple = field(repr=False)
    generators: tuple = field(repr=False)

    @property
    def base(self) -> QuadraticSpace:
        return self.cx.base

    @property
    def frame(self) -> QuadraticSpace:
        return self.cx.frame

    @property
    def n(self) -> int:
        return self.cx.n

    @property
    def m(self) -> int:
        return self.cx.n // 2

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def chirality_order(self) -> tuple:
        """Basis reordering listing even blades (S+) before odd ones (S-)."""
        return _chirality_order(self.basis)

    def basis_indices(self) -> list:
        return [list(blade_indices(m)) for m in self.basis]

    def identity(self) -> OperatorMatrix:
        return OperatorMatrix.identity(self.grading)

    def generator(self, j: int) -> OperatorMatrix:
        """``c(e'_j)`` for the frame generator j (1-based)."""
        if not 1 <= j <= self.n:
            raise IndexOutOfRange(f"generator index {j} outside 1..{self.n}")
        return self.generators[j - 1]

    def vector_action(self, w: Multivector) -> OperatorMatrix:
        """``c(w) = sqrt(2) (eps(w_+) - iota(w_-))`` for a frame or base vector."""
        w = self.cx.to_frame(w)
        if not w.is_vector():
            raise NotAVector("expected a 1-vector")
        a, b = self.polarization.coefficients(w)
        out = OperatorMatrix.zero(self.grading)
        for k in range(self.m):
            if a[k] != 0:
                out = out + self.eps[k] * a[k]
            if b[k] != 0:
                out = out - self.iotas[k] * b[k]
        return out

    def blade_action(self, mask: int) -> OperatorMatrix:
        out = self.identity()
        for i in blade_indices(mask):
            out = out * self.generators[i - 1]
        return out

    def action(self, a: Multivector) -> OperatorMatrix:
        """``c(a)`` for a Clifford element over the frame or the base space."""
        if a.algebra != CLIFFORD:
            raise ValueError("the spinor module carries a Clifford action")
        a = self.cx.to_frame(a)
        out = OperatorMatrix.zero(self.grading)
        for mask, c in a.terms.items():
            out = out + self.blade_action(mask) * c
        return out

    def spinor(self, coords) -> list:
        coords = list(coords)
        if len(coords) != self.dim:
            raise IndexOutOfRange(f"spinor needs {self.dim} coordinates")
        return coords


def spinor_context(space) -> SpinorContext:
    """Complexify, polarize and build the generator matrices."""
    cx = space if isinstance(space, Complexification) else complexify(space)
    pol = polarize(cx)
    m = cx.n // 2
    ext = QuadraticSpace.euclidean(m)
    masks = tuple(graded_lex_masks(m))
    grading = _grading(masks)
    eps, iotas = [], []
    for k in range(m):
        ek = Multivector.blade(ext, [k + 1])
        eps.append(OperatorMatrix(operator_matrix(lambda x, v=ek: epsilon(v, x), ext), grading))
        iotas.append(OperatorMatrix(operator_matrix(lambda x, v=ek: iota(v, x), ext), grading))
    gens = []
    for k in range(m):
        gens.append(eps[k] - iotas[k])
        gens.append((eps[k] + iotas[k]) * I)
    return SpinorContext(cx, pol, masks, grading, tuple(eps), tuple(iotas), tuple(gens))


def clifford_action_matrix(ctx: SpinorContext, j: int) -> OperatorMatrix:
    return ctx.generator(j)


# -- chirality ----------------------------------------------------------------


def chirality(ctx: SpinorContext, frame=None):
    """``Gamma = i**(n/2) e'_1 ... e'_n`` and its matrix.

    ``frame`` optionally lists the generators (1-based) in another order; an
    odd reordering gives ``-Gamma``.
    """
    order = list(range(1, ctx.n + 1)) if frame is None else list(frame)
    if sorted(order) != list(range(1, ctx.n + 1)):
        raise IndexOutOfRange("frame must be a permutation of the generators")
    phase = I ** ctx.m
    gamma = Multivector.blade(ctx.frame, order) * phase
    return gamma, ctx.action(gamma)


def chirality_from_pairs(ctx: SpinorContext):
    """``Gamma`` as the product of ``a_k = (f+ f- - f- f+) / 4``; returns ``(Gamma, [a_k])``."""
    pol = ctx.polarization
    factors = []
    for k in range(ctx.m):
        fp, fm = pol.plus[k], pol.minus[k]
        factors.append((fp * fm - fm * fp) * Fraction(1, 4))
    out = Multivector.scalar(ctx.frame, 1)
    for a in factors:
        out = out * a
    return out, factors


# -- hermitian structure --------------------------------------------------------


def spinor_gram(ctx: SpinorContext) -> list:
    """Gram matrix of the spinor basis under ``<w, w'> = (conj(w), w')``, extended by determinants."""
    pol = ctx.polarization
    frame = ctx.frame
    # (conj(e_i^+), e_j^+) with e^+ = f^+ / sqrt(2)
    pair = [[frame.form(pol.plus[i].conjugate(), pol.plus[j]) / 2 for j in range(ctx.m)] for i in range(ctx.m)]
    gram = []
    for mi in ctx.basis:
        row = []
        for mj in ctx.basis:
            ii, jj = blade_indices(mi), blade_indices(mj)
            if len(ii) != len(jj):
                row.append(Fraction(0))
            elif not ii:
                row.append(Fraction(1))
            else:
                row.append(det([[pair[a - 1][b - 1] for b in jj] for a in ii]))
        gram.append(row)
    return gram


def hermitian_form(ctx: SpinorContext, x, y):
    """``<x, y>``, conjugate-linear in ``x``."""
    x, y = ctx.spinor(x), ctx.spinor(y)
    gram = spinor_gram(ctx)
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        cx = conj(xi)
        for j, yj in enumerate(y):
            if yj != 0 and gram[i][j] != 0:
                total = total + cx * gram[i][j] * yj
    return total


def op_adjoint(ctx: SpinorContext, A: OperatorMatrix) -> OperatorMatrix:
    """Adjoint for the hermitian form; the spinor basis is orthonormal, so this is ``A^H``."""
    if A.d != ctx.dim:
        raise IndexOutOfRange("operator does not act on this spinor module")
    return A.adjoint()


# -- Dirac matrices -------------------------------------------------------------


def pauli(k: int) -> list:
    i = I
    return {
        1: [[0, 1], [1, 0]],
        2: [[0, -i], [i, 0]],
        3: [[1, 0], [0, -1]],
    }[k]


def _block(a, b, c, d) -> list:
    top = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    bottom = [list(rc) + list(rd) for rc, rd in zip(c, d)]
    return top + bottom


def block_targets() -> list:
    """The chirality-sorted block matrices ``gamma^0..gamma^3, gamma_5``."""
    one = [[1, 0], [0, 1]]
    zero = [[0, 0], [0, 0]]
    neg = lambda m: [[-x for x in row] for row in m]  # noqa: E731
    out = [_block(zero, one, one, zero)]
    for k in (1, 2, 3):
        s = pauli(k)
        out.append(_block(zero, neg(s), s, zero))
    out.append(_block(one, zero, zero, neg(one)))
    return out


@dataclass(frozen=True)
class GammaMatrices:
    """Dirac matrices ``gamma^mu = i c(e^mu)`` and ``gamma_5 = c(Gamma)`` on M4.

    ``order`` lists the spinor basis in chirality order and ``T`` is the
    block-diagonal change of basis with ``gamma_block = T^-1 P gamma P^-1 T``.
    """

    gammas: tuple
    gamma5: OperatorMatrix
    order: tuple
    T: OperatorMatrix
    T_inv: OperatorMatrix
    basis: tuple

    def block_form(self, mu) -> OperatorMatrix:
        g = self.gamma5 if mu == 5 else self.gammas[mu]
        return g.permuted(self.order).transformed(self.T, self.T_inv)

    def adjointness(self) -> dict:
        """``{"gamma0": +1, ...}``: +1 selfadjoint, -1 anti-selfadjoint, 0 neither."""
        out = {}
        for name, g in [(f"gamma{m}", g) for m, g in enumerate(self.gammas)] + [("gamma5", self.gamma5)]:
            adj = g.adjoint()
            out[name] = 1 if adj == g else (-1 if adj == -g else 0)
        return out


def _solve_block_change(perm_gammas, targets, grading) -> OperatorMatrix:
    d = len(grading)
    # unknowns: entries of T restricted to the diagonal blocks
    slots = [(r, c) for r in range(d) for c in range(d) if grading[r] == grading[c]]
    col = {rc: k for k, rc in enumerate(slots)}
    rows = []
    for g, t in zip(perm_gammas, targets):
        # (g T - T t)[r, c] = 0
        for r in range(d):
            for c in range(d):
                eq = [Fraction(0)] * len(slots)
                for s in range(d):
                    if (s, c) in col and g[r, s] != 0:
                        eq[col[(s, c)]] = eq[col[(s, c)]] + g[r, s]
                    if (r, s) in col and t[s][c] != 0:
                        eq[col[(r, s)]] = eq[col[(r, s)]] - t[s][c]
                if any(x != 0 for x in eq):
                    rows.append(eq)
    sols = nullspace(rows, len(slots))
    if len(sols) != 1:
        raise ArithmeticError(f"expected a unique intertwiner up to scale, found {len(sols)}")
    x = sols[0]
    lead = next(v for v in x if v != 0)
    T = np.empty((d, d), dtype=object)
    T.fill(Fraction(0))
    for (r, c), k in col.items():
        T[r, c] = x[k] / lead
    return OperatorMatrix(T, grading)


def gamma_matrices(ctx: SpinorContext) -> GammaMatrices:
    if ctx.base != MINKOWSKI:
        raise WrongSignature(f"Dirac matrices need signature (+,-,-,-), got {ctx.base.spec()}")
    gammas = tuple(ctx.vector_action(Multivector.blade(ctx.base, [mu + 1])) * I for mu in range(4))
    _, gamma5 = chirality(ctx)
    order = ctx.chirality_order
    targets = block_targets()
    grading = tuple(ctx.grading[i] for i in order)
    T = _solve_block_change([g.permuted(order) for g in gammas], targets[:4], grading)
    T_inv = OperatorMatrix(inverse(T.rows()), grading)
    basis = tuple(tuple(blade_indices(ctx.basis[i])) for i in order)
    return GammaMatrices(gammas, gamma5, order, T, T_inv, basis)


# -- sigma tensors --------------------------------------------------------------


def _check_indices(ctx, indices) -> list:
    indices = list(indices)
    if len(set(indices)) != len(indices):
        raise RepeatedIndex(f"indices {indices} repeat")
    for j in indices:
        if not 1 <= j <= ctx.n:
            raise IndexOutOfRange(f"generator index {j} outside 1..{ctx.n}")
    return indices


def sigma_tensor(ctx: SpinorContext, indices) -> OperatorMatrix:
    """``c(quantize(e^{j_1} ^ ... ^ e^{j_k}))`` for distinct base generators (1-based)."""
    indices = _check_indices(ctx, indices)
    wedge = Multivector.scalar(ctx.base, 1, EXTERIOR)
    for j in indices:
        wedge = wedge * Multivector.blade(ctx.base, [j], algebra=EXTERIOR)
    return ctx.action(quantize(wedge))


def sigma_tensor_dirac(ctx: SpinorContext, indices) -> OperatorMatrix:
    """``(i**-k / k!) sum_pi sign(pi) gamma^{j_pi(1)} ... gamma^{j_pi(k)}`` with ``gamma^j = i c(e^j)``."""
    indices = _check_indices(ctx, indices)
    k = len(indices)
    gam = {j: ctx.vector_action(Multivector.blade(ctx.base, [j])) * I for j in indices}
    total = OperatorMatrix.zero(ctx.grading)
    for perm in permutations(range(k)):
        term = ctx.identity()
        for p in perm:
            term = term * gam[indices[p]]
        total = total + term * levi_civita(*perm)
    return total * (GaussianRational(0, -1) ** k / math.factorial(k))


# -- twisted modules -------------------------------------------------------------


@dataclass(frozen=True)
class TwistedModule:
    """``E = W (x) S`` with the Clifford algebra acting on the S factor.

    Basis vectors are ``w_a (x) s_b`` at index ``a * dim S + b``. With a
    split ``(d_plus, d_minus)`` the first ``d_plus`` vectors of W are even.
    """

    ctx: SpinorContext
    d_w: int
    split: tuple | None
    grading: tuple
    generators: tuple = field(repr=False)

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def frame(self) -> QuadraticSpace:
        return self.ctx.frame

    @property
    def cx(self) -> Complexification:
        return self.ctx.cx

    @property
    def dim(self) -> int:
        return self.d_w * self.ctx.dim

    def identity(self) -> OperatorMatrix:
        return OperatorMatrix.identity(self.grading)

    def generator(self, j: int) -> OperatorMatrix:
        if not 1 <= j <= self.n:
            raise IndexOutOfRange(f"generator index {j} outside 1..{self.n}")
        return self.generators[j - 1]

    def lift(self, A: OperatorMatrix) -> OperatorMatrix:
        """``1_W (x) A`` for an operator on S."""
        return A.kron_identity(self.d_w, self.grading)

    def blade_action(self, mask: int) -> OperatorMatrix:
        return self.lift(self.ctx.blade_action(mask))

    def action(self, a: Multivector) -> OperatorMatrix:
        return self.lift(self.ctx.action(a))

    def w_parity(self) -> tuple:
        if self.split is None:
            return (1,) * self.d_w
        return (1,) * self.split[0] + (-1,) * self.split[1]


def build_twisted(ctx: SpinorContext, d_w: int, grading=None) -> TwistedModule:
    if not isinstance(d_w, int) or d_w < 1:
        raise BadGrading(f"twisting dimension must be a positive integer, got {d_w!r}")
    if grading is not None:
        grading = tuple(grading)
        if len(grading) != 2 or min(grading) < 0 or sum(grading) != d_w:
            raise BadGrading(f"split {grading} does not add up to d_W = {d_w}")
        w_par = (1,) * grading[0] + (-1,) * grading[1]
    else:
        w_par = (1,) * d_w
    e_grading = tuple(wp * sp for wp in w_par for sp in ctx.grading)
    gens = tuple(g.kron_identity(d_w, e_grading) for g in ctx.generators)
    return TwistedModule(ctx, d_w, grading, e_grading, gens)


def end_s_dimension_check(ctx: SpinorContext) -> bool:
    """True when the ``2**n`` operators ``c(quantize(e_I))`` span End S."""
    rows = []
    for mask in graded_lex_masks(ctx.n):
        wedge = Multivector(ctx.base, {mask: 1}, EXTERIOR)
        rows.append(ctx.action(quantize(wedge)).flat())
    return rank(rows, ctx.dim * ctx.dim) == ctx.dim * ctx.dim
