"""Spinor modules for a few signatures: dimensions, chirality, reality."""

from cliffordkit import QuadraticSpace, chirality, spinor_context

for sig in ["s:++", "s:++++", "s:+---", "s:++--", "s:++++++"]:
    space = QuadraticSpace.parse(sig)
    ctx = spinor_context(space)
    gamma, mat = chirality(ctx)
    square = (mat * mat).scalar_value()
    print(f"{space.spec():>16}  dim S = {ctx.dim:2d}  Gamma^2 = {square}  grading = {ctx.grading}")

# generators in the exterior-algebra basis of V+
ctx = spinor_context(QuadraticSpace.euclidean(2))
for j in range(1, 3):
    print(f"c(e{j}) =", [[str(x) for x in row] for row in ctx.generator(j).rows()])
