"""Exponentiate bivectors and watch them rotate vectors."""

from fractions import Fraction

from cliffordkit import Ad, Multivector, PiMultiple, QuadraticSpace, ad_matrix, clifford_exp, parse_multivector

E3 = QuadraticSpace.euclidean(3)
e12 = parse_multivector(E3, "e12")

for t in [PiMultiple(0), PiMultiple(Fraction(1, 4)), PiMultiple(Fraction(1, 2)), PiMultiple(1)]:
    g = clifford_exp(e12, t)
    print(f"exp({t} e12) = {g.element}   exact={g.exact}")

# a quarter turn of the spinor is a half turn of vectors
g = clifford_exp(e12, PiMultiple(Fraction(1, 2)))
print("Ad(g) e1 =", Ad(g, Multivector.blade(E3, [1])))

# the adjoint action of a bivector is a skew matrix
print("ad(e12) on vectors:")
for row in ad_matrix(e12):
    print("   ", "  ".join(f"{str(x):>3}" for x in row))

# boosts in Minkowski space: e1 is timelike, e12 squares to +1 and the closed form uses cosh/sinh
M4 = QuadraticSpace.lorentzian(4)
boost = clifford_exp(parse_multivector(M4, "e12"), 0.5)
print("boost:", boost.element, " provenance:", boost.provenance, " defect:", boost.unitarity_defect())

# a bivector that is not simple needs the series
g = clifford_exp(parse_multivector(QuadraticSpace.euclidean(4), "e12 + 2*e34"), 0.3, mode="series")
print("series exp on E4: unitarity defect", g.unitarity_defect())
