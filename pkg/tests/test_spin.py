import math
from fractions import Fraction

import numpy as np
import pytest

from cliffordkit import (
    Ad,
    DegenerateForm,
    I,
    Multivector,
    NonInvertible,
    NotABivector,
    NotAVector,
    NotClosed,
    NotEven,
    PiMultiple,
    QuadraticSpace,
    SeriesDiverged,
    ad_matrix,
    clifford_exp,
    commuting_split,
    contraction_identity_check,
    grade_decompose,
    structure_constants,
    supercommutator,
)
from cliffordkit.golden import M4, e3_expected_ad, e3_rotation_basis, m4_generator
from cliffordkit.spin import levi_civita

E2 = QuadraticSpace.euclidean(2)
E3 = QuadraticSpace.euclidean(3)


def e(space, *idx):
    return Multivector.blade(space, idx)


def test_supercommutator_examples():
    space = QuadraticSpace((2, -1, 3))
    x, y = Multivector.vector(space, [1, 2, 0]), Multivector.vector(space, [0, 1, -1])
    assert supercommutator(x, y) == -2 * space.form(x, y)
    a = e(E3, 1) + e(E3, 2, 3) * 4
    assert supercommutator(Multivector.scalar(E3, 1), a).is_zero()
    assert supercommutator(e(E3, 1, 2), e(E3, 1)) == e(E3, 2) * 2


def test_supercommutator_mixed_is_bilinear():
    a = e(E3, 1) + e(E3, 1, 2) + 3
    b = e(E3, 2) - e(E3, 1, 3) * Fraction(1, 2)
    expected = Multivector.zero(E3)
    for pa in a.parity_split():
        for pb in b.parity_split():
            if pa.is_zero() or pb.is_zero():
                continue
            sign = 1 if pa.parity == -1 and pb.parity == -1 else -1
            expected = expected + pa * pb + pb * pa * sign
    assert supercommutator(a, b) == expected


def test_contraction_identity_examples():
    assert contraction_identity_check(e(E3, 1), e(E3, 1))
    assert contraction_identity_check(e(E3, 1), e(E3, 2, 3))
    space = QuadraticSpace.split(2, 2)
    v = Multivector.vector(space, [1, -2, Fraction(1, 3), 4])
    a = Multivector(space, {0b0111: 2, 0b1001: -1, 0b1111: Fraction(5, 2), 0: 1})
    assert contraction_identity_check(v, a)
    with pytest.raises(NotAVector):
        contraction_identity_check(e(E3, 1, 2), a.__class__.scalar(E3, 1))


def test_degree_inclusions():
    space = QuadraticSpace((1, -1, 2, 1))
    v = Multivector.vector(space, [1, 2, -1, 3])
    b = e(space, 1, 2) + e(space, 3, 4) * 2
    for k in range(5):
        ck = grade_decompose(Multivector(space, {m: m + 1 for m in range(16) if bin(m).count("1") == k}))[k]
        assert set(grade_decompose(supercommutator(v, ck)).nonzero_degrees()) <= {k - 1}
        assert set(grade_decompose(supercommutator(b, ck)).nonzero_degrees()) <= {k}


def test_ad_matrix_examples():
    a1 = e3_rotation_basis()[0]
    assert a1 == e(E3, 2, 3) * Fraction(1, 2)
    assert (ad_matrix(a1) == e3_expected_ad(0)).all()
    assert (ad_matrix(Multivector.zero(E3)) == 0).all()
    A = ad_matrix(m4_generator(0, 1))
    g = np.diag([1, -1, -1, -1])
    lowered = g.dot(A)
    for al in range(4):
        for be in range(4):
            assert lowered[al, be] == g[0, al] * g[1, be] - g[0, be] * g[1, al]


def test_ad_matrix_errors():
    with pytest.raises(NotABivector):
        ad_matrix(e(E3, 1))
    with pytest.raises(NotABivector):
        ad_matrix(e(E3, 1, 2) + 1)
    with pytest.raises(DegenerateForm):
        ad_matrix(Multivector.blade(QuadraticSpace((1, 0)), [1, 2]))


def test_structure_constants_examples():
    c = structure_constants(e3_rotation_basis())
    assert c[0, 1, 2] == 1 and c[1, 2, 0] == 1 and c[1, 0, 2] == -1
    assert (structure_constants([e(E3, 1, 2)]) == 0).all()
    with pytest.raises(NotClosed):
        structure_constants([e(E3, 1, 2), e(E3, 2, 3)])
    with pytest.raises(ValueError):
        structure_constants([e(E3, 1, 2), e(E3, 1, 2) * 2])


def test_levi_civita():
    assert levi_civita(0, 1, 2) == 1
    assert levi_civita(1, 0, 2) == -1
    assert levi_civita(0, 0, 2) == 0


def test_exp_examples():
    g = clifford_exp(e(E2, 1, 2), PiMultiple(1))
    assert g.element == -1 and g.exact
    assert clifford_exp(Multivector.zero(E2)).element == 1
    # exp(i pi/2 a_k) = i a_k with a_k = i e1 e2
    a = e(E2, 1, 2) * I
    g = clifford_exp(a * I, PiMultiple(Fraction(1, 2)))
    assert g.exact and g.element == a * I


def test_exp_float_closed_form_matches_series():
    space = QuadraticSpace.lorentzian(3)
    b = e(space, 1, 2) * Fraction(3, 4)
    closed = clifford_exp(b, Fraction(1, 2))
    series = clifford_exp(b, Fraction(1, 2), mode="series")
    assert not closed.exact
    assert (closed.element - series.element).max_abs() < 1e-13
    assert abs(complex(closed.element.scalar_part()) - math.cosh(3 / 8)) < 1e-15


def test_exp_errors():
    with pytest.raises(NotEven):
        clifford_exp(e(E3, 1))
    with pytest.raises(SeriesDiverged):
        clifford_exp(e(E3, 1, 2) * 40 + e(E3, 2, 3) * 40, mode="series", max_degree=10)
    with pytest.raises(ValueError):
        E4 = QuadraticSpace.euclidean(4)
        clifford_exp(e(E4, 1, 2) + e(E4, 3, 4), mode="closed")


def test_ad_examples():
    v = Multivector.vector(E2, [3, -1])
    assert Ad(clifford_exp(Multivector.zero(E2)), v) == v
    assert Ad(Multivector.scalar(E2, -1), v) == v
    # exp(pi/4 e1e2) rotates e1 by a quarter turn
    g = clifford_exp(e(E2, 1, 2), PiMultiple(Fraction(1, 4)))
    out = Ad(g, e(E2, 1))
    assert out.grades() == {1}
    assert abs(abs(complex(out.coefficient([2]))) - 1) < 1e-15
    assert abs(complex(out.coefficient([1]))) < 1e-15
    with pytest.raises(NotAVector):
        Ad(g, e(E2, 1, 2))
    with pytest.raises(NonInvertible):
        Ad(Multivector.scalar(E2, 1) + e(E2, 1, 2) * 2, e(E2, 1))


def test_commuting_split_of_complex_lorentz_algebra():
    basis = [m4_generator(mu, nu) for mu in range(4) for nu in range(mu + 1, 4)]
    # Gamma = i e0 e1 e2 e3 is central in the even part and squares to 1
    gamma = Multivector.blade(M4, [1, 2, 3, 4]) * I
    assert gamma * gamma == 1
    plus, minus = commuting_split(basis, gamma)
    for a in plus:
        for b in minus:
            assert supercommutator(a, b).is_zero()
    for half in (plus, minus):
        # each half is a 3-dimensional subalgebra closed under the bracket
        assert structure_constants(half[:3]).shape == (3, 3, 3)
        for a in half[3:]:
            assert a in half[:3] or -a in half[:3] or any(a == x * s for x in half[:3] for s in (I, -I))
