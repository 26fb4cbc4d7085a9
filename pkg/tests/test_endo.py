import random
from fractions import Fraction
from itertools import product

import pytest

from cliffordkit import (
    BadIndexSet,
    CalibratedQ,
    DecompositionOracle,
    DimensionMismatch,
    GaussianRational,
    Multivector,
    NotCalibrated,
    OperatorMatrix,
    QuadraticSpace,
    WrongSignature,
    build_twisted,
    calibrate,
    decompose_endo,
    p_algebra,
    p_hat,
    q_algebra,
    q_hat,
    skew_product_check,
    spinor_context,
    supercommutant_basis,
    supercommutator,
)
from cliffordkit.clifford import graded_lex_masks
from cliffordkit.endo import key_identity_sides

E2 = QuadraticSpace.euclidean(2)
E4 = QuadraticSpace.euclidean(4)


def eigen(k, I, J):
    """n_k(I, J): 1 when I and J agree on every index up to k."""
    return int(all(((I >> i) & 1) == ((J >> i) & 1) for i in range(k)))


def test_p_algebra_eigenvalue_law():
    for n in range(1, 5):
        space = QuadraticSpace.euclidean(n)
        for k in range(n + 1):
            for I in range(1 << k):
                for J in range(1 << n):
                    eJ = Multivector(space, {J: 1})
                    assert p_algebra(space, k, I, eJ) == eJ * eigen(k, I, J)


def test_p_algebra_examples():
    a = Multivector(E2, {0: 3, 1: -2, 3: Fraction(1, 2)})
    assert p_algebra(E2, 0, [], a) == a
    assert p_algebra(E2, 2, [], Multivector.scalar(E2, 1)) == 1
    assert p_algebra(E2, 2, [], Multivector.blade(E2, [1])).is_zero()
    for I in range(4):
        once = p_algebra(E2, 2, I, a)
        assert p_algebra(E2, 2, I, once) == once


def test_p_algebra_errors():
    with pytest.raises(BadIndexSet):
        p_algebra(E2, 1, [2], Multivector.scalar(E2, 1))
    with pytest.raises(WrongSignature):
        p_algebra(QuadraticSpace((1, -1)), 1, [], Multivector.scalar(QuadraticSpace((1, -1)), 1))


def test_q_algebra_examples():
    assert q_algebra(E2, [], Multivector.scalar(E2, 1)) == 1
    assert q_algebra(E2, [1], Multivector.blade(E2, [2])).is_zero()
    rng = random.Random(4)
    a = Multivector(E4, {m: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for m in range(16)})
    for I in graded_lex_masks(4):
        eI = Multivector(E4, {I: 1})
        assert eI * q_algebra(E4, I, a) == p_algebra(E4, 4, I, a)


def test_simplicity_witness():
    # every blade is sent to the unit by some calibrated Q
    for J in graded_lex_masks(4):
        assert q_algebra(E4, J, Multivector(E4, {J: 1})) == 1


def test_calibration():
    cal = calibrate(3)
    assert set(cal.signs.values()) <= {1, -1}
    with pytest.raises(NotCalibrated):
        CalibratedQ.uncalibrated(3).sign([1])
    with pytest.raises(NotCalibrated):
        q_algebra(E2, [1], Multivector.scalar(E2, 1), calibration=calibrate(3))


def _random_op(rng, grading):
    d = len(grading)
    return OperatorMatrix(
        [[GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(d)] for _ in range(d)], grading
    )


def test_p_hat_examples():
    ctx = spinor_context(E4)
    ident = ctx.identity()
    for I in graded_lex_masks(4):
        expected = ident if I == 0 else OperatorMatrix.zero(ctx.grading)
        assert p_hat(ctx, 4, I, ident) == expected
    c1 = ctx.generator(1)
    for I in graded_lex_masks(4):
        assert p_hat(ctx, 4, I, c1).is_zero() == (I != 1)
    with pytest.raises(BadIndexSet):
        p_hat(ctx, 1, [3], ident)


def test_key_identity():
    ctx = spinor_context(E4)
    rng = random.Random(1)
    for _ in range(100):
        b = _random_op(rng, ctx.grading)
        for k in range(1, 5):
            lhs, rhs = key_identity_sides(ctx, k, b)
            assert lhs == rhs


def test_q_hat_examples():
    ctx = spinor_context(E4)
    for I, J in product(graded_lex_masks(4), repeat=2):
        got = q_hat(ctx, J, ctx.blade_action(I))
        assert got == (ctx.identity() if I == J else OperatorMatrix.zero(ctx.grading))
    tw = build_twisted(spinor_context(E2), 2)
    rng = random.Random(2)
    b = _random_op(rng, tw.grading)
    for I in graded_lex_masks(2):
        X = q_hat(tw, I, b)
        # commutant of 1_W (x) End S is End W (x) 1
        for a, c in product(range(2), repeat=2):
            block = [[X[2 * a + r, 2 * c + s] for s in range(2)] for r in range(2)]
            assert block[0][1] == block[1][0] == 0 and block[0][0] == block[1][1]


def test_decompose_examples():
    ctx = spinor_context(E2)
    res = decompose_endo(ctx, ctx.identity())
    assert [idx for idx, _ in res.terms] == [()]
    b = ctx.generator(1) * ctx.generator(2)
    res = decompose_endo(ctx, b)
    assert len(res.terms) == 1 and res.terms[0][0] == (1, 2)
    assert res.terms[0][1] == ctx.identity()
    tw = build_twisted(spinor_context(E2), 4)
    b = _random_op(random.Random(3), tw.grading)
    assert b.d == 8
    res = decompose_endo(tw, b)
    assert len(res.terms) == 4 and res.residual_zero and res.supercommuting
    with pytest.raises(DimensionMismatch):
        decompose_endo(ctx, OperatorMatrix.identity((1, 1, -1)))


def test_parity_bookkeeping():
    tw = build_twisted(spinor_context(E2), 3, (2, 1))
    rng = random.Random(5)
    for _ in range(10):
        even, odd = _random_op(rng, tw.grading).parity_split()
        for part, p in ((even, 1), (odd, -1)):
            for idx, X in decompose_endo(tw, part).terms:
                assert X.parity * (-1) ** len(idx) == p


def test_supercommutant_dimensions():
    even, odd = supercommutant_basis(spinor_context(E4))
    assert (len(even), len(odd)) == (1, 0)
    even, odd = supercommutant_basis(build_twisted(spinor_context(E2), 3, (2, 1)))
    # End W for a (2|1)-graded W: 5 even and 4 odd operators
    assert (len(even), len(odd)) == (5, 4)
    tw = build_twisted(spinor_context(E2), 2, (1, 1))
    for B in sum(supercommutant_basis(tw), []):
        for j in (1, 2):
            assert supercommutator(tw.generator(j), B).is_zero()


def test_oracle_agrees():
    tw = build_twisted(spinor_context(E2), 2, (1, 1))
    oracle = DecompositionOracle(tw)
    rng = random.Random(6)
    for _ in range(10):
        b = _random_op(rng, tw.grading)
        assert oracle.solve(b) == dict(decompose_endo(tw, b).terms)


def test_skew_product_rule():
    rng = random.Random(7)
    for parities in product((1, -1), repeat=4):
        assert skew_product_check(parities, rng=rng)


def test_result_json():
    ctx = spinor_context(E2)
    data = decompose_endo(ctx, ctx.generator(1)).to_json()
    assert data["residual_zero"] is True
    assert data["terms"][0]["I"] == [1]
    assert data["terms"][0]["matrix"]["parity"] == "even"
