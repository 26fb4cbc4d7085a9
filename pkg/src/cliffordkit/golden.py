"""Rotation and Lorentz generators for E3 and M4, with their closed-form brackets."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .clifford import Multivector, QuadraticSpace
from .spin import levi_civita

__all__ = [
    "E3",
    "M4",
    "e3_rotation_basis",
    "e3_expected_structure",
    "e3_expected_ad",
    "m4_generator",
    "m4_lorentz_basis",
    "m4_expected_bracket",
    "m4_expected_ad_lowered",
    "metric",
]

E3 = QuadraticSpace.euclidean(3)
M4 = QuadraticSpace((1, -1, -1, -1))


def e3_rotation_basis() -> list:
    """``a_i = 1/4 eps_ijk e_j e_k``, so ``a_1 = e_2 e_3 / 2`` and cyclically."""
    out = []
    for i in range(3):
        a = Multivector.zero(E3)
        for j in range(3):
            for k in range(3):
                s = levi_civita(i, j, k)
                if s:
                    a = a + Multivector.blade(E3, [j + 1, k + 1]) * Fraction(s, 4)
        out.append(a)
    return out


def e3_expected_structure() -> np.ndarray:
    """``c[i, j, k] = eps_ijk``."""
    out = np.empty((3, 3, 3), dtype=object)
    for idx in np.ndindex(3, 3, 3):
        out[idx] = Fraction(levi_civita(*idx))
    return out


def e3_expected_ad(i: int) -> np.ndarray:
    """``(A_i)_jk = -eps_ijk``."""
    out = np.empty((3, 3), dtype=object)
    for j in range(3):
        for k in range(3):
            out[j, k] = Fraction(-levi_civita(i, j, k))
    return out


def metric(mu: int, nu: int) -> int:
    return int(M4.q[mu]) if mu == nu else 0


def m4_generator(mu: int, nu: int) -> Multivector:
    """``m_{mu nu} = -1/2 e_mu e_nu``, antisymmetric in the indices (0-based)."""
    if mu == nu:
        return Multivector.zero(M4)
    return Multivector.blade(M4, [mu + 1, nu + 1]) * Fraction(-1, 2)


def m4_lorentz_basis() -> list:
    return [m4_generator(mu, nu) for mu in range(4) for nu in range(mu + 1, 4)]


def m4_expected_bracket(mu: int, nu: int, s: int, t: int) -> Multivector:
    """``g_tm m_ns + g_ms m_tn + g_tn m_sm + g_ns m_mt``."""
    g, m = metric, m4_generator
    return (
        m(nu, s) * g(t, mu)
        + m(t, nu) * g(mu, s)
        + m(s, mu) * g(t, nu)
        + m(mu, t) * g(nu, s)
    )


def m4_expected_ad_lowered(mu: int, nu: int) -> np.ndarray:
    """``(M_{mu nu})_{ab} = g_{mu a} g_{nu b} - g_{mu b} g_{nu a}``."""
    g = metric
    out = np.empty((4, 4), dtype=object)
    for a in range(4):
        for b in range(4):
            out[a, b] = Fraction(g(mu, a) * g(nu, b) - g(mu, b) * g(nu, a))
    return out
