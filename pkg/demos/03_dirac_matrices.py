"""Build Dirac matrices from the spinor module of Minkowski space."""

from cliffordkit import QuadraticSpace, gamma_matrices, spinor_context

ctx = spinor_context(QuadraticSpace.lorentzian(4))
gm = gamma_matrices(ctx)


def show(name, op):
    print(name)
    for row in op.rows():
        print("   ", "  ".join(f"{str(x):>4}" for x in row))


for mu, g in enumerate(gm.gammas):
    show(f"gamma^{mu}", g)
show("gamma5", gm.gamma5)

# {gamma^mu, gamma^nu} = 2 g^{mu nu}
metric = (1, -1, -1, -1)
for mu in range(4):
    for nu in range(4):
        ac = gm.gammas[mu] * gm.gammas[nu] + gm.gammas[nu] * gm.gammas[mu]
        expected = (2 * metric[mu] if mu == nu else 0)
        assert ac.scalar_value() == expected
print("anticommutators match the metric")
