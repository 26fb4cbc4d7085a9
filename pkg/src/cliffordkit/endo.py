"""Projection operators, their left inverses and the decomposition of End E.

For a supermodule E over the complexified algebra with orthonormal
generators ``c_k``, every operator splits as ``b = sum_I c(e_I) Q_I(b)``
with each ``Q_I(b)`` in the supercommutant of the Clifford action.

Modules are duck-typed: anything with ``n``, ``frame``, ``dim``,
``grading``, ``generator(j)``, ``blade_action(mask)`` and ``identity()``
works, in particular :class:`~cliffordkit.spinor.SpinorContext` and
:class:`~cliffordkit.spinor.TwistedModule`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .clifford import Multivector, QuadraticSpace, blade_indices, blade_mask, graded_lex_masks
from .errors import BadIndexSet, DimensionMismatch, NotCalibrated, WrongSignature
from .linalg import inverse, nullspace
from .operators import OperatorMatrix
from .scalars import GaussianRational
from .spin import supercommutator

__all__ = [
    "p_algebra",
    "CalibratedQ",
    "calibrate",
    "q_algebra",
    "p_hat",
    "p_hat_all",
    "q_hat",
    "key_identity_sides",
    "DecompositionResult",
    "decompose_endo",
    "supercommutant_basis",
    "DecompositionOracle",
    "skew_product_sides",
    "skew_product_check",
]

HALF = Fraction(-1, 2)


def _mask_of(I) -> int:
    return I if isinstance(I, int) else blade_mask(I)


def _orthonormal(space: QuadraticSpace):
    if any(x != 1 for x in space.q):
        raise WrongSignature("projection operators need an orthonormal frame (all form values 1)")


def _check_subset(mask: int, k: int):
    if mask >> k:
        raise BadIndexSet(f"index set {blade_indices(mask)} is not inside 1..{k}")


# -- algebra level --------------------------------------------------------------


def p_algebra(space: QuadraticSpace, k: int, I, a: Multivector) -> Multivector:
    """``P_I^(k) a``; keeps the blades ``e_J`` with ``J`` and ``I`` agreeing on ``1..k``."""
    _orthonormal(space)
    if a.space != space:
        raise DimensionMismatch("element does not live in the given space")
    if not 0 <= k <= space.n:
        raise BadIndexSet(f"level k={k} outside 0..{space.n}")
    mask = _mask_of(I)
    _check_subset(mask, k)
    return _p_rec(space, k, mask, a)


def _p_rec(space, k, mask, a):
    if k == 0:
        return a
    ek = Multivector._make(space, {1 << (k - 1): Fraction(1)}, a.algebra)
    bit = 1 << (k - 1)
    if mask & bit:
        inner = _p_rec(space, k - 1, mask ^ bit, a)
        return ek * supercommutator(ek, inner) * HALF
    inner = _p_rec(space, k - 1, mask, a)
    return supercommutator(ek, ek * inner) * HALF


def _q_raw(space, mask, a):
    n = space.n
    comp = ((1 << n) - 1) ^ mask
    x = Multivector._make(space, {comp: Fraction(1)}, a.algebra) * a
    for k in range(1, n + 1):
        ek = Multivector._make(space, {1 << (k - 1): Fraction(1)}, a.algebra)
        x = supercommutator(ek, x)
    return x * (HALF ** n)


@dataclass(frozen=True)
class CalibratedQ:
    """Signs ``sigma_I`` making ``Q_I e_I = 1``; ``signs`` maps blade masks to +-1."""

    n: int
    signs: dict | None

    @property
    def calibrated(self) -> bool:
        return self.signs is not None

    def sign(self, I) -> int:
        if self.signs is None:
            raise NotCalibrated("run calibrate(n) before evaluating Q operators")
        return self.signs[_mask_of(I)]

    @classmethod
    def uncalibrated(cls, n: int) -> "CalibratedQ":
        return cls(n, None)


@lru_cache(maxsize=None)
def calibrate(n: int) -> CalibratedQ:
    space = QuadraticSpace.euclidean(n)
    signs = {}
    for mask in graded_lex_masks(n):
        value = _q_raw(space, mask, Multivector._make(space, {mask: Fraction(1)}, "clifford"))
        s = value.scalar_part()
        if set(value.terms) - {0} or s not in (1, -1):
            raise ArithmeticError(f"Q on e_I gave {value!r}, expected +-1")
        signs[mask] = int(s)
    return CalibratedQ(n, signs)


def q_algebra(space: QuadraticSpace, I, a: Multivector, calibration: CalibratedQ | None = None) -> Multivector:
    """``Q_I a = (-1/2)**n sigma_I [[e_n, ... [[e_1, e_{I^c} a]] ... ]]``."""
    _orthonormal(space)
    cal = calibrate(space.n) if calibration is None else calibration
    if cal.n != space.n:
        raise NotCalibrated(f"calibration is for n={cal.n}, space has n={space.n}")
    mask = _mask_of(I)
    _check_subset(mask, space.n)
    return _q_raw(space, mask, a) * cal.sign(mask)


# -- operator level -------------------------------------------------------------


def _gen(module, k):
    return module.generator(k)


def p_hat(module, k: int, I, b: OperatorMatrix) -> OperatorMatrix:
    """The recursion defining ``P_I^(k)`` with ``c_k`` acting by supercommutators on End E."""
    if not 0 <= k <= module.n:
        raise BadIndexSet(f"level k={k} outside 0..{module.n}")
    mask = _mask_of(I)
    _check_subset(mask, k)
    return _p_hat_rec(module, k, mask, b)


def _p_hat_rec(module, k, mask, b):
    if k == 0:
        return b
    ck = _gen(module, k)
    bit = 1 << (k - 1)
    if mask & bit:
        return ck * supercommutator(ck, _p_hat_rec(module, k - 1, mask ^ bit, b)) * HALF
    return supercommutator(ck, ck * _p_hat_rec(module, k - 1, mask, b)) * HALF


def p_hat_all(module, b: OperatorMatrix, k: int | None = None) -> list:
    """All levels at once: entry j maps each ``I`` inside ``1..j`` to ``P_I^(j) b``."""
    k = module.n if k is None else k
    levels = [{0: b}]
    for j in range(1, k + 1):
        cj = _gen(module, j)
        bit = 1 << (j - 1)
        nxt = {}
        for mask, x in levels[-1].items():
            nxt[mask] = supercommutator(cj, cj * x) * HALF
            nxt[mask | bit] = cj * supercommutator(cj, x) * HALF
        levels.append(nxt)
    return levels


def key_identity_sides(module, k: int, b: OperatorMatrix):
    """``(-1/2 [[c_k, c_k b]] - 1/2 c_k [[c_k, b]], b)``."""
    ck = _gen(module, k)
    lhs = supercommutator(ck, ck * b) * HALF + ck * supercommutator(ck, b) * HALF
    return lhs, b


def q_hat(module, I, b: OperatorMatrix, calibration: CalibratedQ | None = None) -> OperatorMatrix:
    cal = calibrate(module.n) if calibration is None else calibration
    if cal.n != module.n:
        raise NotCalibrated(f"calibration is for n={cal.n}, module has n={module.n}")
    mask = _mask_of(I)
    _check_subset(mask, module.n)
    sign = cal.sign(mask)
    comp = ((1 << module.n) - 1) ^ mask
    x = module.blade_action(comp) * b
    for k in range(1, module.n + 1):
        x = supercommutator(_gen(module, k), x)
    return x * (HALF ** module.n * sign)


@dataclass(frozen=True)
class DecompositionResult:
    """``b = sum_I c(e_I) X_I`` with each ``X_I`` supercommuting with the action."""

    terms: tuple  # ((indices, OperatorMatrix), ...), zero components dropped
    residual_zero: bool
    supercommuting: bool

    def component(self, I):
        key = tuple(sorted(I))
        for idx, X in self.terms:
            if idx == key:
                return X
        return None

    def to_json(self) -> dict:
        return {
            "terms": [{"I": list(idx), "matrix": X.to_json()} for idx, X in self.terms],
            "residual_zero": self.residual_zero,
            "supercommuting": self.supercommuting,
        }


def decompose_endo(module, b: OperatorMatrix, calibration: CalibratedQ | None = None) -> DecompositionResult:
    if b.grading != module.grading:
        raise DimensionMismatch(f"operator of size {b.d} does not act on a module of dimension {module.dim}")
    terms = []
    total = OperatorMatrix.zero(module.grading)
    commuting = True
    gens = [module.generator(j) for j in range(1, module.n + 1)]
    for mask in graded_lex_masks(module.n):
        X = q_hat(module, mask, b, calibration)
        if X.is_zero():
            continue
        total = total + module.blade_action(mask) * X
        if commuting and not all(supercommutator(c, X).is_zero() for c in gens):
            commuting = False
        terms.append((blade_indices(mask), X))
    return DecompositionResult(tuple(terms), (total - b).is_zero(), commuting)


# -- supercommutant and linear-solver oracle -------------------------------------


def supercommutant_basis(module):
    """Bases ``(even, odd)`` of the operators supercommuting with every generator."""
    d = module.dim
    g = module.grading
    gens = [module.generator(j) for j in range(1, module.n + 1)]
    out = []
    for parity in (1, -1):
        slots = [(r, c) for r in range(d) for c in range(d) if g[r] * g[c] == parity]
        cols = []
        for r, c in slots:
            E = OperatorMatrix.elementary(r, c, g)
            cols.append([x for cj in gens for x in supercommutator(cj, E).flat()])
        rows = [list(row) for row in zip(*cols)] if cols else []
        basis = []
        for vec in nullspace(rows, len(slots)):
            arr = np.empty((d, d), dtype=object)
            arr.fill(Fraction(0))
            for (r, c), v in zip(slots, vec):
                arr[r, c] = v
            basis.append(OperatorMatrix(arr, g))
        out.append(basis)
    return out[0], out[1]


class DecompositionOracle:
    """Solves ``b = sum_I c(e_I) X_I`` with ``X_I`` in the supercommutant by plain linear algebra.

    The system matrix depends only on the module, so it is inverted once.
    """

    def __init__(self, module):
        self.module = module
        even, odd = supercommutant_basis(module)
        self.commutant = even + odd
        self.masks = graded_lex_masks(module.n)
        cols = []
        for mask in self.masks:
            cI = module.blade_action(mask)
            for B in self.commutant:
                cols.append((cI * B).flat())
        self.unknowns = len(cols)
        size = module.dim * module.dim
        if self.unknowns != size:
            raise ArithmeticError(f"system has {self.unknowns} unknowns for {size} equations")
        A = [list(row) for row in zip(*cols)]
        self._inv = np.array(inverse(A), dtype=object)

    def solve(self, b: OperatorMatrix) -> dict:
        """Map blade index tuples to the components ``X_I``; zero components omitted."""
        coeffs = self._inv.dot(np.array(b.flat(), dtype=object))
        out = {}
        k = len(self.commutant)
        for i, mask in enumerate(self.masks):
            X = OperatorMatrix.zero(self.module.grading)
            for t, B in enumerate(self.commutant):
                c = coeffs[i * k + t]
                if c != 0:
                    X = X + B * c
            if not X.is_zero():
                out[blade_indices(mask)] = X
        return out


# -- skew tensor product ----------------------------------------------------------


def _random_scalar(rng: random.Random):
    return GaussianRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), Fraction(rng.randint(-4, 4), rng.randint(1, 3)))


def _random_homogeneous_element(space, parity, rng):
    masks = [m for m in range(1 << space.n) if (-1) ** bin(m).count("1") == parity]
    terms = {m: _random_scalar(rng) for m in masks}
    return Multivector(space, terms)


def _random_combination(basis, grading, rng):
    X = OperatorMatrix.zero(grading)
    for B in basis:
        X = X + B * _random_scalar(rng)
    return X


def skew_product_sides(module, parities, rng: random.Random):
    """``(lhs, rhs)`` for ``(c(a) b)(c(a') b') = (-1)**(|b||a'|) c(a a') (b b')``.

    ``parities`` is ``(p_a, p_a', p_b, p_b')`` with +1 even and -1 odd; ``b``
    and ``b'`` are random supercommutant elements of those parities.
    """
    pa, pa2, pb, pb2 = parities
    even, odd = supercommutant_basis(module)
    pick = lambda p: even if p == 1 else odd  # noqa: E731
    if not pick(pb) or not pick(pb2):
        raise BadIndexSet("the module has no supercommutant elements of the requested parity")
    a = _random_homogeneous_element(module.frame, pa, rng)
    a2 = _random_homogeneous_element(module.frame, pa2, rng)
    b = _random_combination(pick(pb), module.grading, rng)
    b2 = _random_combination(pick(pb2), module.grading, rng)
    ca = _action(module, a)
    ca2 = _action(module, a2)
    lhs = (ca * b) * (ca2 * b2)
    sign = -1 if (pb == -1 and pa2 == -1) else 1
    rhs = _action(module, a * a2) * (b * b2) * sign
    return lhs, rhs


def _action(module, a):
    out = OperatorMatrix.zero(module.grading)
    for mask, c in a.terms.items():
        out = out + module.blade_action(mask) * c
    return out


def skew_product_check(parities, module=None, rng: random.Random | None = None) -> bool:
    """Check the skew tensor product sign at matrix level.

    The default module is ``W (x) S`` for n = 2 with a graded two-dimensional
    W, which has supercommutant elements of both parities.
    """
    if module is None:
        from .spinor import build_twisted, spinor_context

        module = build_twisted(spinor_context(QuadraticSpace.euclidean(2)), 2, (1, 1))
    rng = rng or random.Random(0)
    lhs, rhs = skew_product_sides(module, parities, rng)
    return lhs == rhs

