"""Reference implementations that share no code with the library.

Elements are plain dicts mapping tuples of 0-based generator indices to
Fractions. Nothing here touches bitmasks or the library's sign routine.
"""

from fractions import Fraction
from itertools import permutations
from math import factorial

import sympy
from sympy.combinatorics import Permutation


def gram_matrix(q):
    n = len(q)
    return [[Fraction(q[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def _add(out, word, c):
    s = out.get(word, 0) + c
    if s == 0:
        out.pop(word, None)
    else:
        out[word] = s


def rewrite(G, words, exterior=False):
    """Normal-order a combination of words in the tensor algebra.

    Uses only ``v w = -w v - 2 (v, w)`` (or ``v w = -w v`` for the exterior
    algebra) until every word is strictly increasing.
    """
    todo = list(words.items())
    done = {}
    while todo:
        word, c = todo.pop()
        if c == 0:
            continue
        for p in range(len(word) - 1):
            a, b = word[p], word[p + 1]
            if a < b:
                continue
            head, tail = word[:p], word[p + 2:]
            if a == b:
                if not exterior and G[a][a] != 0:
                    todo.append((head + tail, -G[a][a] * c))
            else:
                todo.append((head + (b, a) + tail, -c))
                if not exterior and G[a][b] != 0:
                    todo.append((head + tail, -2 * G[a][b] * c))
            break
        else:
            _add(done, word, c)
    return done


def word_product(G, x, y, exterior=False):
    raw = {}
    for wx, cx in x.items():
        for wy, cy in y.items():
            _add(raw, wx + wy, cx * cy)
    return rewrite(G, raw, exterior)


def vector(coords):
    return {(i,): Fraction(c) for i, c in enumerate(coords) if c != 0}


def product_of_vectors(G, vectors):
    out = {(): Fraction(1)}
    for v in vectors:
        out = word_product(G, out, vector(v))
    return out


def quantize_wedge(G, vectors):
    """``1/k! sum sign(pi) v_pi(1) ... v_pi(k)`` by brute force."""
    k = len(vectors)
    total = {}
    for perm in permutations(range(k)):
        sign = Permutation(list(perm)).signature()
        for w, c in product_of_vectors(G, [vectors[p] for p in perm]).items():
            _add(total, w, sign * c)
    return {w: c / factorial(k) for w, c in total.items()}


def wedge_of_vectors(vectors):
    out = {(): Fraction(1)}
    for v in vectors:
        out = word_product(None, out, vector(v), exterior=True)
    return out


def gram_det(G, us, vs):
    """``det((u_i, v_j))`` with sympy's determinant."""
    def pair(u, v):
        return sum(Fraction(u[a]) * G[a][b] * Fraction(v[b]) for a in range(len(u)) for b in range(len(v)))

    if len(us) != len(vs):
        return Fraction(0)
    if not us:
        return Fraction(1)
    M = sympy.Matrix([[sympy.Rational(pair(u, v)) for v in vs] for u in us])
    d = M.det()
    return Fraction(int(d.p), int(d.q))


def eps(i, x):
    """Wedge with generator i from the left."""
    out = {}
    for w, c in x.items():
        if i in w:
            continue
        pos = sum(1 for j in w if j < i)
        new = tuple(sorted(w + (i,)))
        _add(out, new, c * (-1) ** pos)
    return out


def iota(G, i, x):
    """Contraction with ``(e_i, .)`` by the alternating Leibniz sum."""
    out = {}
    for w, c in x.items():
        for p, j in enumerate(w):
            g = G[i][j]
            if g != 0:
                _add(out, w[:p] + w[p + 1:], c * g * (-1) ** p)
    return out


def clifford_on_exterior(G, word, x):
    """``c(e_{w1}) ... c(e_{wk}) x`` with ``c = eps - iota``."""
    for i in reversed(word):
        a, b = eps(i, x), iota(G, i, x)
        x = dict(a)
        for w, c in b.items():
            _add(x, w, -c)
    return x


# conversions from library objects


def from_multivector(mv):
    out = {}
    for mask, c in mv.terms.items():
        word = tuple(i for i in range(mv.space.n) if mask >> i & 1)
        out[word] = c
    return out


def to_sympy(x):
    from cliffordkit.scalars import GaussianRational

    if isinstance(x, GaussianRational):
        return sympy.Rational(x.real.numerator, x.real.denominator) + sympy.I * sympy.Rational(
            x.imag.numerator, x.imag.denominator
        )
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def sympy_matrix(op):
    return sympy.Matrix([[to_sympy(x) for x in row] for row in op.rows()])


def supercommutant(gens, grading):
    """Basis of operators X with ``c X = (-1)^|X| X c`` for every generator c."""
    d = len(grading)
    basis = []
    for parity in (1, -1):
        slots = [(r, c) for r in range(d) for c in range(d) if grading[r] * grading[c] == parity]
        syms = sympy.symbols(f"x0:{len(slots)}")
        X = sympy.zeros(d, d)
        for (r, c), s in zip(slots, syms):
            X[r, c] = s
        eqs = [e for c in gens for e in (c * X - parity * X * c) if e != 0]
        if not eqs:
            continue
        A, _ = sympy.linear_eq_to_matrix(eqs, syms)
        for vec in A.nullspace():
            basis.append(X.subs(dict(zip(syms, vec))))
    return basis


def solve_decomposition(gens, grading, blade_mats, b):
    """Components ``X_I`` of ``b = sum_I c_I X_I`` from sympy's linear solver.

    ``blade_mats`` is a list of ``(indices, c_I)`` pairs; zero components are dropped.
    """
    comm = supercommutant(gens, grading)
    cols = []
    for _, cI in blade_mats:
        for B in comm:
            cols.append(list(cI * B))
    A = sympy.Matrix(cols).T
    coeffs = A.LUsolve(sympy.Matrix(list(b)))
    out = {}
    k = len(comm)
    for i, (idx, _) in enumerate(blade_mats):
        X = sympy.zeros(*b.shape)
        for t, B in enumerate(comm):
            X += coeffs[i * k + t] * B
        X = X.applyfunc(sympy.expand)
        if any(x != 0 for x in X):
            out[tuple(idx)] = X
    return out
