"""Quadratic spaces, blades and multivectors.

Generators square to minus the form value, ``e_i * e_i = -q_i``, and are
pairwise orthogonal. A blade ``e_I`` is stored as a bitmask with bit
``i - 1`` standing for ``e_i``; index sets are 1-based everywhere in the
public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import BadSignature, MismatchedAlgebra, MismatchedSpace
from .scalars import GaussianRational, as_exact, parse_scalar, scalar_from_json, scalar_to_json

CLIFFORD = "clifford"
EXTERIOR = "exterior"
ALGEBRAS = (CLIFFORD, EXTERIOR)

__all__ = [
    "CLIFFORD",
    "EXTERIOR",
    "QuadraticSpace",
    "Multivector",
    "blade_mask",
    "blade_indices",
    "blade_product",
    "reorder_sign",
    "graded_lex_masks",
    "star",
    "parity_split",
    "dimension_census",
    "parse_multivector",
]


@dataclass(frozen=True)
class QuadraticSpace:
    """Diagonal quadratic form ``q(v) = sum(q_i * v_i**2)`` on an n-dim space."""

    q: tuple

    def __post_init__(self):
        values = tuple(_as_form_value(x) for x in self.q)
        if not values:
            raise ValueError("a quadratic space needs at least one dimension")
        object.__setattr__(self, "q", values)

    @property
    def n(self) -> int:
        return len(self.q)

    @classmethod
    def euclidean(cls, n: int) -> "QuadraticSpace":
        return cls((1,) * n)

    @classmethod
    def lorentzian(cls, n: int) -> "QuadraticSpace":
        """Signature ``(+, -, ..., -)``, the convention of the Minkowski examples."""
        return cls((1,) + (-1,) * (n - 1))

    @classmethod
    def split(cls, p: int, m: int) -> "QuadraticSpace":
        return cls((1,) * p + (-1,) * m)

    @classmethod
    def from_signs(cls, signs: str) -> "QuadraticSpace":
        table = {"+": 1, "-": -1, "0": 0}
        try:
            return cls(tuple(table[ch] for ch in signs))
        except KeyError as exc:
            raise BadSignature(f"unknown sign character {exc.args[0]!r} in {signs!r}") from None

    @classmethod
    def parse(cls, spec: str) -> "QuadraticSpace":
        """Parse ``"s:+---"`` (sign pattern) or ``"q:1,-1,1/2"`` (explicit values)."""
        spec = spec.strip()
        if spec.startswith("s:"):
            body = spec[2:]
            if not body:
                raise BadSignature("empty sign pattern")
            return cls.from_signs(body)
        if spec.startswith("q:"):
            parts = [p for p in spec[2:].split(",")]
            if not parts or any(not p.strip() for p in parts):
                raise BadSignature(f"malformed value list in {spec!r}")
            try:
                return cls(tuple(Fraction(p.strip()) for p in parts))
            except (ValueError, ZeroDivisionError):
                raise BadSignature(f"malformed value list in {spec!r}") from None
        raise BadSignature(f"signature must start with 's:' or 'q:', got {spec!r}")

    def spec(self) -> str:
        return "q:" + ",".join(str(x) for x in self.q)

    @property
    def is_degenerate(self) -> bool:
        return any(x == 0 for x in self.q)

    def form(self, v, w):
        """Bilinear form on vectors given as Multivectors or coordinate lists."""
        vc, wc = _coords(self, v), _coords(self, w)
        return sum((qi * a * b for qi, a, b in zip(self.q, vc, wc)), Fraction(0))

    def quadratic(self, v):
        return self.form(v, v)

    def blade_weight(self, mask: int):
        """Product of q_i over the blade, i.e. the Gram determinant of ``e_I``."""
        out = Fraction(1)
        for i in blade_indices(mask):
            out *= self.q[i - 1]
        return out


def _as_form_value(x):
    x = as_exact(x)
    if isinstance(x, GaussianRational):
        if x.imag:
            raise ValueError("form values must be real")
        x = x.real
    return x


def _coords(space, v):
    if isinstance(v, Multivector):
        return v.vector_coords()
    coords = list(v)
    if len(coords) != space.n:
        raise MismatchedSpace(f"expected {space.n} coordinates, got {len(coords)}")
    return coords


# -- blades -----------------------------------------------------------------


def blade_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"generator indices are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def blade_indices(mask: int) -> tuple:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def graded_lex_masks(n: int) -> list:
    """All blades of an n-dim space ordered by grade, then lexicographically."""
    return [blade_mask(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]


def _graded_lex_key(mask: int):
    return (mask.bit_count(), blade_indices(mask))


def reorder_sign(a: int, b: int) -> int:
    """Sign picked up when sorting the word ``e_A e_B`` into increasing order.

    For each generator of B, count the generators of A sitting above it.
    """
    swaps = 0
    while b:
        low = b & -b
        swaps += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if swaps & 1 else 1


def blade_product(space: QuadraticSpace, I, J, algebra: str = CLIFFORD):
    """``e_I * e_J = coeff * e_K`` with ``K`` the symmetric difference.

    ``I`` and ``J`` may be bitmasks or iterables of 1-based indices.
    Returns ``(coeff, K)`` with ``K`` a bitmask.
    """
    a = I if isinstance(I, int) else blade_mask(I)
    b = J if isinstance(J, int) else blade_mask(J)
    common = a & b
    if algebra == EXTERIOR and common:
        return Fraction(0), a ^ b
    coeff = Fraction(reorder_sign(a, b))
    i = 0
    while common:
        if common & 1:
            coeff *= -space.q[i]
        common >>= 1
        i += 1
    return coeff, a ^ b


# -- multivectors -----------------------------------------------------------


class Multivector:
    """A sparse linear combination of blades in a Clifford or exterior algebra.

    Instances are treated as immutable. ``*`` is the Clifford product for the
    ``"clifford"`` tag and the wedge product for the ``"exterior"`` tag.
    """

    __slots__ = ("space", "terms", "algebra")

    def __init__(self, space: QuadraticSpace, terms=None, algebra: str = CLIFFORD):
        if algebra not in ALGEBRAS:
            raise ValueError(f"unknown algebra tag {algebra!r}")
        full = (1 << space.n) - 1
        clean = {}
        for mask, c in (terms or {}).items():
            if not isinstance(mask, int):
                mask = blade_mask(mask)
            if mask & ~full or mask < 0:
                raise ValueError(f"blade {blade_indices(mask)} outside a {space.n}-dim space")
            if isinstance(c, int):
                c = Fraction(c)
            if c != 0:
                clean[mask] = clean.get(mask, 0) + c
                if clean[mask] == 0:
                    del clean[mask]
        self.space = space
        self.terms = clean
        self.algebra = algebra

    @classmethod
    def _make(cls, space, terms, algebra):
        # terms already clean: int keys, no zeros
        obj = object.__new__(cls)
        obj.space = space
        obj.terms = terms
        obj.algebra = algebra
        return obj

    # constructors

    @classmethod
    def zero(cls, space, algebra=CLIFFORD):
        return cls._make(space, {}, algebra)

    @classmethod
    def scalar(cls, space, value=1, algebra=CLIFFORD):
        return cls(space, {0: value}, algebra)

    @classmethod
    def blade(cls, space, indices, coeff=1, algebra=CLIFFORD):
        """Blade from 1-based indices in any order; the sign of the reordering is applied."""
        indices = list(indices)
        if len(set(indices)) != len(indices):
            # repeated generators: multiply them out
            out = cls.scalar(space, coeff, algebra)
            for i in indices:
                out = out * cls.blade(space, [i], 1, algebra)
            return out
        mask = 0
        sign = 1
        for i in indices:
            if not 1 <= i <= space.n:
                raise ValueError(f"generator index {i} outside 1..{space.n}")
            sign *= reorder_sign(mask, 1 << (i - 1))
            mask |= 1 << (i - 1)
        if not isinstance(coeff, (float, complex)):
            coeff = as_exact(coeff)
        return cls(space, {mask: sign * coeff}, algebra)

    @classmethod
    def vector(cls, space, coords: Sequence, algebra=CLIFFORD):
        if len(coords) != space.n:
            raise MismatchedSpace(f"expected {space.n} coordinates, got {len(coords)}")
        return cls(space, {1 << i: c for i, c in enumerate(coords)}, algebra)

    # basic queries

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms.items(), key=lambda t: _graded_lex_key(t[0])))

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, indices) -> object:
        mask = indices if isinstance(indices, int) else blade_mask(indices)
        return self.terms.get(mask, Fraction(0))

    def scalar_part(self):
        return self.terms.get(0, Fraction(0))

    def grades(self) -> set:
        return {m.bit_count() for m in self.terms}

    def grade_part(self, k: int) -> "Multivector":
        return Multivector._make(
            self.space, {m: c for m, c in self.terms.items() if m.bit_count() == k}, self.algebra
        )

    def is_vector(self) -> bool:
        return all(m.bit_count() == 1 for m in self.terms)

    def vector_coords(self) -> list:
        from .errors import NotAVector

        if not self.is_vector():
            raise NotAVector("element has components outside degree 1")
        return [self.terms.get(1 << i, Fraction(0)) for i in range(self.space.n)]

    @property
    def parity(self):
        """+1 for even, -1 for odd, None if mixed. Zero counts as even."""
        kinds = {m.bit_count() & 1 for m in self.terms}
        if len(kinds) > 1:
            return None
        return -1 if kinds == {1} else 1

    def parity_split(self):
        return parity_split(self)

    def parity_twist(self) -> "Multivector":
        """Grade involution: even part minus odd part."""
        return Multivector._make(
            self.space,
            {m: (-c if m.bit_count() & 1 else c) for m, c in self.terms.items()},
            self.algebra,
        )

    def with_algebra(self, algebra: str) -> "Multivector":
        if algebra not in ALGEBRAS:
            raise ValueError(f"unknown algebra tag {algebra!r}")
        return Multivector._make(self.space, dict(self.terms), algebra)

    def map_coefficients(self, fn) -> "Multivector":
        return Multivector(self.space, {m: fn(c) for m, c in self.terms.items()}, self.algebra)

    def conjugate(self) -> "Multivector":
        """Conjugate the coefficients, leaving blades alone."""
        return self.map_coefficients(lambda c: c.conjugate())

    def star(self) -> "Multivector":
        return star(self)

    def max_abs(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    # arithmetic

    def _check(self, other: "Multivector"):
        if other.space != self.space:
            raise MismatchedSpace(f"{self.space.spec()} vs {other.space.spec()}")
        if other.algebra != self.algebra:
            raise MismatchedAlgebra(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            out = dict(self.terms)
            for m, c in other.terms.items():
                s = out.get(m, 0) + c
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
            return Multivector._make(self.space, out, self.algebra)
        if _is_scalar(other):
            return self + Multivector.scalar(self.space, other, self.algebra)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Multivector._make(self.space, {m: -c for m, c in self.terms.items()}, self.algebra)

    def __sub__(self, other):
        if isinstance(other, Multivector) or _is_scalar(other):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if _is_scalar(other):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            space, algebra = self.space, self.algebra
            out = {}
            for a, ca in self.terms.items():
                for b, cb in other.terms.items():
                    coeff, k = blade_product(space, a, b, algebra)
                    if coeff == 0:
                        continue
                    s = out.get(k, 0) + coeff * ca * cb
                    if s == 0:
                        out.pop(k, None)
                    else:
                        out[k] = s
            return Multivector._make(space, out, algebra)
        if _is_scalar(other):
            if other == 0:
                return Multivector.zero(self.space, self.algebra)
            if isinstance(other, int):
                other = Fraction(other)
            return Multivector._make(self.space, {m: c * other for m, c in self.terms.items()}, self.algebra)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            if isinstance(other, int):
                other = Fraction(other)
            return Multivector._make(self.space, {m: c / other for m, c in self.terms.items()}, self.algebra)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Multivector.scalar(self.space, 1, self.algebra)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return (
                self.space == other.space
                and self.algebra == other.algebra
                and self.terms == other.terms
            )
        if _is_scalar(other):
            if other == 0:
                return not self.terms
            return set(self.terms) == {0} and self.terms[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.space, self.algebra, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask, c in self:
            name = "e" + "".join(str(i) if i < 10 else f"_{i}" for i in blade_indices(mask))
            if mask == 0:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        text = " + ".join(parts).replace("+ -", "- ")
        return text if self.algebra == CLIFFORD else f"wedge[{text}]"

    # serialization

    def to_json(self) -> dict:
        return {
            "n": self.space.n,
            "q": [f"{x.numerator}/{x.denominator}" for x in self.space.q],
            "algebra": self.algebra,
            "terms": [
                {"blades": list(blade_indices(m)), **scalar_to_json(c)} for m, c in self
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Multivector":
        q = tuple(Fraction(x) for x in obj["q"])
        if len(q) != obj["n"]:
            raise ValueError("'n' does not match the length of 'q'")
        space = QuadraticSpace(q)
        terms = {}
        for t in obj.get("terms", []):
            mask = blade_mask(t["blades"])
            terms[mask] = terms.get(mask, 0) + scalar_from_json(t)
        return cls(space, terms, obj.get("algebra", CLIFFORD))


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational, float, complex)) and not isinstance(x, bool)


def star(a: Multivector) -> Multivector:
    """The adjoint: reverses products, negates vectors, conjugates coefficients.

    On a blade of size k this is the sign ``(-1)**(k*(k+1)//2)``.
    """
    if a.algebra != CLIFFORD:
        raise MismatchedAlgebra("star is defined on the Clifford algebra")
    out = {}
    for m, c in a.terms.items():
        k = m.bit_count()
        sign = -1 if (k * (k + 1) // 2) & 1 else 1
        out[m] = sign * c.conjugate()
    return Multivector._make(a.space, out, a.algebra)


def parity_split(a: Multivector):
    """Split into (even, odd) parts by blade size."""
    even, odd = {}, {}
    for m, c in a.terms.items():
        (odd if m.bit_count() & 1 else even)[m] = c
    return (
        Multivector._make(a.space, even, a.algebra),
        Multivector._make(a.space, odd, a.algebra),
    )


def dimension_census(space: QuadraticSpace):
    """Count even and odd blades by enumeration."""
    even = odd = 0
    for mask in range(1 << space.n):
        if mask.bit_count() & 1:
            odd += 1
        else:
            even += 1
    return even, odd


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\([^)]*\)|[0-9]+(?:/[0-9]+)?|i)\s*\*?\s*)?
        (?P<blade>e(?:\{[0-9,\s]*\}|(?:[0-9]|_[0-9]+)+))?\s*""",
    re.VERBOSE,
)


def _blade_from_text(text: str) -> list:
    body = text[1:]
    if body.startswith("{"):
        inner = body[1:-1].strip()
        return [int(x) for x in inner.split(",")] if inner else []
    return [int(tok[1:]) if tok.startswith("_") else int(tok) for tok in re.findall(r"_[0-9]+|[0-9]", body)]


def parse_multivector(space: QuadraticSpace, text: str, algebra: str = CLIFFORD) -> Multivector:
    """Parse text like ``"1/2 - 3*e12 + (1+2i)*e{1,3}"``.

    Blade names use one digit per generator (``e12``), ``_NN`` for indices
    of 10 and above (``e1_10``), or an explicit list (``e{1,10}``).
    """
    text = text.strip()
    if not text:
        raise ValueError("empty multivector")
    out = Multivector.zero(space, algebra)
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or not (m.group("coef") or m.group("blade")):
            raise ValueError(f"cannot parse multivector near {text[pos:]!r}")
        if pos > 0 and not m.group("sign"):
            raise ValueError(f"missing '+' or '-' before {text[pos:].strip()!r}")
        if not m.group("blade") and "*" in m.group(0):
            raise ValueError(f"'*' without a blade in {m.group(0).strip()!r}")
        coef = m.group("coef")
        value = parse_scalar(coef.strip("()")) if coef else Fraction(1)
        if m.group("sign") == "-":
            value = -value
        indices = _blade_from_text(m.group("blade")) if m.group("blade") else []
        if any(not 1 <= i <= space.n for i in indices):
            raise ValueError(f"blade {m.group('blade')} outside a {space.n}-dim space")
        out = out + Multivector.blade(space, indices, value, algebra)
        pos = m.end()
    return out
