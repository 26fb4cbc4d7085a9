"""Split a random operator on W (x) S into Clifford and supercommuting parts."""

import random
from fractions import Fraction

from cliffordkit import GaussianRational, OperatorMatrix, blade_mask, QuadraticSpace, build_twisted, decompose_endo, spinor_context

rng = random.Random(5)


def rnd():
    return Fraction(rng.randint(-4, 4), rng.randint(1, 3))


ctx = spinor_context(QuadraticSpace.euclidean(2))
module = build_twisted(ctx, 3, grading=(2, 1))
b = OperatorMatrix([[GaussianRational(rnd(), rnd()) for _ in range(module.dim)] for _ in range(module.dim)], module.grading)

result = decompose_endo(module, b)
print(f"module dimension {module.dim}, {len(result.terms)} nonzero components")
for idx, X in result.terms:
    print(f"  I = {idx!s:8} parity {X.parity_label()}")

total = OperatorMatrix.zero(module.grading)
for idx, X in result.terms:
    total = total + module.blade_action(blade_mask(idx)) * X
print("reconstruction exact:", total == b)
print("components supercommute:", result.supercommuting)
