"""Print the Cayley table of Cl(3) and compare it with the exterior algebra.

Run with ``python3 demos/01_multiplication_table.py``.
"""

from cliffordkit import CLIFFORD, EXTERIOR, Multivector, QuadraticSpace, graded_lex_masks, parse_multivector


def show_table(space, algebra):
    masks = graded_lex_masks(space.n)
    blades = [Multivector._make(space, {m: 1}, algebra) if m else Multivector.scalar(space, 1, algebra) for m in masks]
    names = [str(b) for b in blades]
    width = max(len(s) for s in names) + 4
    print("".ljust(width) + "".join(s.ljust(width) for s in names))
    for a, name in zip(blades, names):
        print(name.ljust(width) + "".join(str(a * b).ljust(width) for b in blades))


E3 = QuadraticSpace.euclidean(3)
print("Clifford product, e_i^2 = -1")
show_table(E3, CLIFFORD)
print()
print("wedge product")
show_table(E3, EXTERIOR)

# the relation v w + w v = -2 (v, w) for two random-looking vectors
v = parse_multivector(E3, "e1 + 2*e2")
w = parse_multivector(E3, "3*e2 - e3")
print()
print("v w + w v =", v * w + w * v, " (expected", -2 * E3.form([1, 2, 0], [0, 3, -1]), ")")
