"""Seeded property suites behind ``cliffordkit verify``.

Each check names the identity it tests, so a failure report says which law
broke and shows both sides.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import golden
from .clifford import CLIFFORD, EXTERIOR, Multivector, QuadraticSpace, blade_product, dimension_census, star
from .endo import calibrate, decompose_endo, key_identity_sides, p_hat_all, q_algebra
from .errors import CliffordError
from .exterior import clifford_action_on_exterior, epsilon, gram_form, iota, quantize, symbol, grade_decompose
from .operators import OperatorMatrix
from .scalars import GaussianRational, I
from .spin import (
    PiMultiple,
    Ad,
    ad_matrix,
    clifford_exp,
    contraction_identity_sides,
    inner_derivation_sides,
    jacobi_sides,
    structure_constants,
    supercommutator,
)

__all__ = ["Failure", "VerifyReport", "SUITES", "run_suite", "rewrite_word", "IDENTITIES"]

SUITES = ("core", "car", "spin", "spinor", "decomp")

IDENTITIES = {
    "clifford": "Clifford relation: vv = -q(v)1",
    "anticomm": "anticommutation relation: vw + wv + 2(v,w)1 = 0",
    "rewrite": "blade product matches word rewriting with e_i e_i = -q_i",
    "star": "star antiautomorphism: (ab)* = b* a*, a** = a",
    "wedge": "exterior supercommutativity: a^b = (-1)^(|a||b|) b^a",
    "census": "parity census: dim C+ = dim C- = 2^(n-1)",
    "car": "canonical anticommutation: {iota(u), eps(v)} = (u,v), {eps,eps} = {iota,iota} = 0",
    "adjoint": "contraction is adjoint to wedge: <eps(v)a, b> = <a, iota(v)b>",
    "roundtrip": "symbol and quantization are inverse",
    "cv2": "exterior Clifford map: c(v)^2 = -q(v)",
    "symparity": "symbol preserves parity",
    "derivation": "inner derivation rule: [[a,bc]] = [[a,b]]c +- b[[a,c]]",
    "jacobi": "generalized Jacobi identity",
    "contraction": "contraction identity: -1/2 [[v,a]] = quantize(iota(v) symbol(a))",
    "degree": "degree rules: [[C1,Ck]] in C(k-1), [[C2,Ck]] in Ck",
    "so": "ad(a) lies in so(V): (Av,w) + (v,Aw) = 0",
    "unitary": "spin elements are unitary: g g* = 1",
    "Ad": "Ad(g) preserves the form and maps V to V",
    "golden_e3": "E3 rotation generators: [a_i,a_j] = eps_ijk a_k, (A_i)_jk = -eps_ijk",
    "golden_m4": "M4 Lorentz generators: sl(2,C) brackets and M_mn tensors",
    "spinor_anticomm": "spinor anticommutation: c(e_j)c(e_k) + c(e_k)c(e_j) = -2 delta_jk",
    "chirality": "chirality: Gamma^2 = 1, c(Gamma) e_I = (-1)^|I| e_I",
    "selfadjoint": "selfadjointness: c(w)* = -c(conj w)",
    "key": "key identity: -1/2[[c_k, c_k b]] - 1/2 c_k[[c_k, b]] = b",
    "completeness": "completeness: sum_I P_I b = b at every level",
    "qdelta": "left inverses: Q_I e_J = delta_IJ",
    "supercommutant": "decomposition components supercommute with the action",
    "completed": "suite ran to completion",
}


@dataclass
class Failure:
    identity: str
    inputs: dict
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"identity": self.identity, "inputs": self.inputs, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class VerifyReport:
    suite: str
    signature: str
    seed: int
    trials: int
    cases: int = 0
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        # wall time is left out so identical runs serialize identically
        return {
            "suite": self.suite,
            "signature": self.signature,
            "seed": self.seed,
            "trials": self.trials,
            "cases": self.cases,
            "ok": self.ok,
            "failures": [f.to_json() for f in self.failures],
            "skipped": list(self.skipped),
        }

    def to_text(self) -> str:
        lines = [
            f"suite {self.suite} on {self.signature} (seed {self.seed}, {self.trials} trials)",
            f"cases: {self.cases}  failures: {len(self.failures)}  wall time: {self.wall_time:.2f}s",
        ]
        for s in self.skipped:
            lines.append(f"skipped: {s}")
        for f in self.failures:
            lines.append(f"FAIL {f.identity}")
            for k, v in f.inputs.items():
                lines.append(f"    {k} = {v}")
            lines.append(f"    lhs = {f.lhs}")
            lines.append(f"    rhs = {f.rhs}")
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines)


class _Run:
    def __init__(self, report: VerifyReport, max_failures: int = 20):
        self.report = report
        self.max_failures = max_failures
        self._per_identity = {}

    def check(self, key: str, ok: bool, inputs: dict, lhs, rhs):
        self.report.cases += 1
        if ok:
            return
        n = self._per_identity.get(key, 0)
        self._per_identity[key] = n + 1
        if n < 3 and len(self.report.failures) < self.max_failures:
            self.report.failures.append(
                Failure(IDENTITIES[key], {k: str(v) for k, v in inputs.items()}, str(lhs), str(rhs))
            )


# -- random inputs ---------------------------------------------------------------


def _rat(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def _vector(rng, space) -> Multivector:
    return Multivector.vector(space, [_rat(rng) for _ in range(space.n)])


def _homogeneous(rng, space, parity=None, algebra=CLIFFORD) -> Multivector:
    if parity is None:
        parity = rng.choice((1, -1))
    masks = [m for m in range(1 << space.n) if (m.bit_count() % 2 == 0) == (parity == 1)]
    chosen = rng.sample(masks, min(len(masks), rng.randint(1, 4)))
    return Multivector(space, {m: _rat(rng) for m in chosen}, algebra)


def _element(rng, space, algebra=CLIFFORD) -> Multivector:
    chosen = rng.sample(range(1 << space.n), min(1 << space.n, rng.randint(1, 5)))
    return Multivector(space, {m: _rat(rng) for m in chosen}, algebra)


def _gauss(rng) -> GaussianRational:
    return GaussianRational(_rat(rng), _rat(rng))


def _operator(rng, module) -> OperatorMatrix:
    d = module.dim
    return OperatorMatrix([[_gauss(rng) for _ in range(d)] for _ in range(d)], module.grading)


# -- independent word rewriting ----------------------------------------------------


def rewrite_word(space: QuadraticSpace, word, algebra: str = CLIFFORD):
    """Reduce a word of 1-based generators to ``(coeff, sorted_indices)`` by adjacent swaps."""
    w = list(word)
    coeff = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == w[i + 1]:
                if algebra == EXTERIOR:
                    return Fraction(0), ()
                coeff *= -space.q[w[i] - 1]
                del w[i:i + 2]
                changed = True
                break
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                coeff = -coeff
                changed = True
                break
    return coeff, tuple(w)


def _indices(mask: int) -> tuple:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


# -- suites -------------------------------------------------------------------------


def _core(run: _Run, space: QuadraticSpace, rng, trials: int):
    for _ in range(trials):
        v, w = _vector(rng, space), _vector(rng, space)
        vv = v * v
        run.check("clifford", vv == -space.quadratic(v), {"v": v}, vv, -space.quadratic(v))
        lhs = v * w + w * v + 2 * space.form(v, w)
        run.check("anticomm", lhs.is_zero(), {"v": v, "w": w}, lhs, 0)
    n = space.n
    masks = list(range(1 << n))
    pairs = [(a, b) for a in masks for b in masks] if n <= 4 else [
        (rng.choice(masks), rng.choice(masks)) for _ in range(trials)
    ]
    for a, b in pairs:
        for alg in (CLIFFORD, EXTERIOR):
            coeff, k = blade_product(space, a, b, alg)
            oc, ow = rewrite_word(space, _indices(a) + _indices(b), alg)
            ok = coeff == oc and (coeff == 0 or _indices(k) == ow)
            run.check("rewrite", ok, {"I": _indices(a), "J": _indices(b), "algebra": alg}, (coeff, _indices(k)), (oc, ow))
    for _ in range(trials):
        a, b = _element(rng, space), _element(rng, space)
        lhs = star(a * b)
        rhs = star(b) * star(a)
        run.check("star", lhs == rhs and star(star(a)) == a, {"a": a, "b": b}, lhs, rhs)
        x = _homogeneous(rng, space, algebra=EXTERIOR)
        y = _homogeneous(rng, space, algebra=EXTERIOR)
        sign = -1 if x.parity == -1 and y.parity == -1 else 1
        run.check("wedge", x * y == (y * x) * sign, {"a": x, "b": y}, x * y, (y * x) * sign)
    even, odd = dimension_census(space)
    run.check("census", even == odd == 2 ** (n - 1), {"n": n}, (even, odd), 2 ** (n - 1))


def _car(run: _Run, space: QuadraticSpace, rng, trials: int):
    for _ in range(trials):
        u, v = _vector(rng, space), _vector(rng, space)
        x = _element(rng, space, EXTERIOR)
        lhs = iota(u, epsilon(v, x)) + epsilon(v, iota(u, x))
        rhs = x * space.form(u, v)
        ee = epsilon(u, epsilon(v, x)) + epsilon(v, epsilon(u, x))
        ii = iota(u, iota(v, x)) + iota(v, iota(u, x))
        run.check("car", lhs == rhs and ee.is_zero() and ii.is_zero(), {"u": u, "v": v, "x": x}, lhs, rhs)
        y = _element(rng, space, EXTERIOR)
        g1, g2 = gram_form(epsilon(v, x), y), gram_form(x, iota(v, y))
        run.check("adjoint", g1 == g2, {"v": v, "a": x, "b": y}, g1, g2)
        a = _element(rng, space)
        ok = quantize(symbol(a)) == a and symbol(quantize(x)) == x
        run.check("roundtrip", ok, {"a": a, "x": x}, quantize(symbol(a)), a)
        c = clifford_action_on_exterior(v)
        lhs2 = c(c(x))
        run.check("cv2", lhs2 == x * (-space.quadratic(v)), {"v": v, "x": x}, lhs2, x * (-space.quadratic(v)))
        h = _homogeneous(rng, space)
        run.check("symparity", symbol(h).parity == h.parity, {"a": h}, symbol(h).parity, h.parity)
    if space.n <= 6:
        ok = all(
            quantize(symbol(Multivector(space, {m: 1}))) == Multivector(space, {m: 1}) for m in range(1 << space.n)
        )
        run.check("roundtrip", ok, {"basis": f"all blades, n={space.n}"}, ok, True)


def _spin(run: _Run, space: QuadraticSpace, rng, trials: int):
    for _ in range(trials):
        a, b, c = (_homogeneous(rng, space) for _ in range(3))
        l1, r1 = inner_derivation_sides(a, b, c)
        run.check("derivation", l1 == r1, {"a": a, "b": b, "c": c}, l1, r1)
        l2, r2 = jacobi_sides(a, b, c)
        run.check("jacobi", l2 == r2, {"a": a, "b": b, "c": c}, l2, r2)
        v = _vector(rng, space)
        x = _element(rng, space)
        l3, r3 = contraction_identity_sides(v, x)
        run.check("contraction", l3 == r3, {"v": v, "a": x}, l3, r3)
        k = rng.randint(0, space.n)
        comp = grade_decompose(x)[k]
        biv = grade_decompose(_element(rng, space))[2] if space.n >= 2 else Multivector.zero(space)
        d1 = grade_decompose(supercommutator(v, comp)).nonzero_degrees()
        d2 = grade_decompose(supercommutator(biv, comp)).nonzero_degrees()
        ok = set(d1) <= {k - 1} and set(d2) <= {k}
        run.check("degree", ok, {"v": v, "b": biv, "a_k": comp, "k": k}, (d1, d2), ([k - 1], [k]))
    if space.n < 2:
        run.report.skipped.append("bivector checks need n >= 2")
        return
    bivectors = [Multivector.blade(space, [i, j]) for i in range(1, space.n + 1) for j in range(i + 1, space.n + 1)]
    if not space.is_degenerate:
        for a in bivectors:
            A = ad_matrix(a)
            n = space.n
            ok = all(
                space.q[i] * A[i, j] + space.q[j] * A[j, i] == 0 for i in range(n) for j in range(n)
            )
            run.check("so", ok, {"a": a}, A.tolist(), "antisymmetric after lowering")
    for t_i in range(max(2, trials // 10)):
        # keep |a*a| <= 1 so float boosts stay well conditioned
        blade = bivectors[rng.randrange(len(bivectors))]
        scale = max(1, abs((blade * blade).scalar_part()))
        b = blade * (Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), 4) / scale)
        if t_i % 2:
            other = bivectors[rng.randrange(len(bivectors))]
            b = b + other * (Fraction(rng.choice((-1, 1)), 4) / max(1, abs((other * other).scalar_part())))
            g = clifford_exp(b, Fraction(1, 2), mode="series")
        elif (b * b).scalar_part() < 0:
            g = clifford_exp(b, PiMultiple(Fraction(rng.randint(-4, 4), 2)))
        else:
            g = clifford_exp(b, Fraction(1, 2))
    if space == golden.E3:
        basis = golden.e3_rotation_basis()
        try:
            c = structure_constants(basis)
            ok = bool((c == golden.e3_expected_structure()).all()) and all(
                (ad_matrix(a) == golden.e3_expected_ad(i)).all() for i, a in enumerate(basis)
            )
            got = c.tolist()
        except (CliffordError, ValueError) as exc:
            ok, got = False, repr(exc)
        run.check("golden_e3", ok, {}, got, "eps_ijk")
    if space == golden.M4:
        try:
            ok = _m4_golden()
        except (CliffordError, ValueError):
            ok = False
        run.check("golden_m4", ok, {}, ok, True)


def _m4_golden() -> bool:
    ok = True
    for mu in range(4):
        for nu in range(4):
            for s in range(4):
                for t in range(4):
                    lhs = supercommutator(golden.m4_generator(mu, nu), golden.m4_generator(s, t))
                    ok = ok and lhs == golden.m4_expected_bracket(mu, nu, s, t)
            if mu != nu:
                A = ad_matrix(golden.m4_generator(mu, nu))
                lowered = [[golden.metric(a, a) * A[a, b] for b in range(4)] for a in range(4)]
                ok = ok and lowered == golden.m4_expected_ad_lowered(mu, nu).tolist()
    return ok


def _spinor_module(space: QuadraticSpace):
    from .spinor import spinor_context

    return spinor_context(space)


def _spinor(run: _Run, space: QuadraticSpace, rng, trials: int):
    from .spinor import chirality, chirality_from_pairs

    try:
        ctx = _spinor_module(space)
    except CliffordError as exc:
        run.report.skipped.append(f"spinor suite: {exc}")
        return
    ident = ctx.identity()
    for j in range(1, ctx.n + 1):
        for k in range(1, ctx.n + 1):
            cj, ck = ctx.generator(j), ctx.generator(k)
            lhs = cj * ck + ck * cj
            rhs = ident * (-2 if j == k else 0)
            run.check("spinor_anticomm", lhs == rhs, {"j": j, "k": k}, lhs, rhs)
    gamma, G = chirality(ctx)
    gamma2, _ = chirality_from_pairs(ctx)
    diag = OperatorMatrix([[Fraction(ctx.grading[i]) if i == j else 0 for j in range(ctx.dim)] for i in range(ctx.dim)], ctx.grading)
    ok = gamma * gamma == 1 and gamma == gamma2 and G == diag
    run.check("chirality", ok, {"Gamma": gamma}, G, diag)
    for _ in range(trials):
        coords = [_rat(rng) + I * _rat(rng) for _ in range(ctx.n)]
        w = Multivector.vector(ctx.frame, coords)
        lhs = ctx.vector_action(w).adjoint()
        rhs = -ctx.vector_action(w.conjugate())
        run.check("selfadjoint", lhs == rhs, {"w": w}, lhs, rhs)


def _decomp(run: _Run, space: QuadraticSpace, rng, trials: int):
    n = space.n
    if n <= 4:
        frame = QuadraticSpace.euclidean(n)
        for a in range(1 << n):
            for b in range(1 << n):
                val = q_algebra(frame, a, Multivector(frame, {b: 1}))
                run.check("qdelta", val == (1 if a == b else 0), {"I": _indices(a), "J": _indices(b)}, val, int(a == b))
    try:
        ctx = _spinor_module(space)
    except CliffordError as exc:
        run.report.skipped.append(f"operator decomposition: {exc}")
        return
    if ctx.dim > 8:
        run.report.skipped.append("operator decomposition limited to dim S <= 8")
        return
    calibrate(n)
    for _ in range(max(1, trials // 5)):
        b = _operator(rng, ctx)
        for k in range(1, n + 1):
            lhs, rhs = key_identity_sides(ctx, k, b)
            run.check("key", lhs == rhs, {"b": b, "k": k}, lhs, rhs)
        levels = p_hat_all(ctx, b)
        sums = [sum(lv.values(), OperatorMatrix.zero(ctx.grading)) for lv in levels]
        run.check("completeness", all(s == b for s in sums), {"b": b}, sums[-1], b)
        res = decompose_endo(ctx, b)
        run.check("supercommutant", res.supercommuting and res.residual_zero, {"b": b}, res.supercommuting, True)


_RUNNERS = {"core": _core, "car": _car, "spin": _spin, "spinor": _spinor, "decomp": _decomp}


def run_suite(space: QuadraticSpace, suite: str = "all", seed: int = 0, trials: int = 100) -> VerifyReport:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    report = VerifyReport(suite, space.spec(), seed, trials)
    run = _Run(report)
    start = time.perf_counter()
    for name in SUITES if suite == "all" else (suite,):
        # a separate stream per suite keeps results independent of which suites ran
        rng = random.Random(f"{seed}:{name}")
        try:
            _RUNNERS[name](run, space, rng, trials)
        except (CliffordError, ArithmeticError, ValueError) as exc:
            run.check("completed", False, {"suite": name}, repr(exc), "no exception")
    report.wall_time = time.perf_counter() - start
    return report
