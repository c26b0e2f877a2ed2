"""Finite fields F_q, monic irreducible polynomials and the *-conjugation.

Field elements are the integers 0..q-1 of galois' polynomial-basis encoding.
Polynomials are stored with coefficients in descending degree order, so the
leading coefficient comes first: z^3+z+1 over F_2 is (1, 0, 1, 1).

Usage:
    from ocycle.qpoly import get_field, irreducibles, star, n_star, m_star
    phi = irreducibles(2, 3)[0]          # z^3+z+1
    star(phi)                            # z^3+z^2+1
    n_star_count(8, 12), m_star_count(8, 6)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import galois
import numpy as np

from .config import get_settings
from .errors import UnsupportedField, ZeroConstantTerm

Coeffs = Tuple[int, ...]


class FqField:
    """Arithmetic tables for F_q built from a galois field class."""

    def __init__(self, q: int) -> None:
        if q < 2 or not galois.is_prime_power(q):
            raise UnsupportedField(f"q={q} is not a prime power")
        self.q = q
        self.GF = galois.GF(q)
        self.p = int(self.GF.characteristic)
        self.k = int(self.GF.degree)
        elems = self.GF.elements
        self.add_table = np.array((elems[:, None] + elems[None, :]).view(np.ndarray), dtype=np.int64)
        self.mul_table = np.array((elems[:, None] * elems[None, :]).view(np.ndarray), dtype=np.int64)
        self.primitive = int(self.GF.primitive_element)
        self._add = self.add_table.tolist()
        self._mul = self.mul_table.tolist()
        self.antilog = [1]
        for _ in range(q - 2):
            self.antilog.append(self._mul[self.antilog[-1]][self.primitive])
        self.log = {a: i for i, a in enumerate(self.antilog)}
        self._neg = [row.index(0) for row in self._add]

    def __repr__(self) -> str:
        return f"FqField(q={self.q})"

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return self.antilog[(-self.log[a]) % (self.q - 1)]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return self.antilog[(self.log[a] * e) % (self.q - 1)]

    def sqrt(self, a: int) -> int:
        """Square root in characteristic 2 (Frobenius is bijective)."""
        if self.p != 2:
            raise UnsupportedField("square roots are only needed in characteristic 2")
        return self.power(a, self.q // 2)

    def absolute_trace(self, a: int) -> int:
        """Tr_{F_q/F_p}(a) as an element of the prime field."""
        total, x = 0, a
        for _ in range(self.k):
            total = self.add(total, x)
            x = self.power(x, self.p)
        return total


@lru_cache(maxsize=None)
def get_field(q: int) -> FqField:
    return FqField(q)


def check_orthogonal_q(q: int) -> FqField:
    """Field for the orthogonal paths: q = 2^k with k within the configured cap."""
    field = get_field(q)
    if field.p != 2 or field.k > get_settings().max_field_degree:
        raise UnsupportedField(f"orthogonal computations need q = 2^k, k <= {get_settings().max_field_degree}; got q={q}")
    return field


@dataclass(frozen=True)
class PolyOverFq:
    """Monic polynomial over F_q; coefficients in descending degree order."""

    q: int
    coeffs: Coeffs

    def __post_init__(self) -> None:
        if len(self.coeffs) < 2 or self.coeffs[0] != 1:
            raise ValueError(f"PolyOverFq must be monic of degree >= 1, got {self.coeffs}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant(self) -> int:
        return self.coeffs[-1]

    @property
    def field(self) -> FqField:
        return get_field(self.q)

    def sort_key(self) -> Tuple[int, Coeffs]:
        return (self.degree, self.coeffs)

    def __lt__(self, other: "PolyOverFq") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        terms: List[str] = []
        for power, c in zip(range(self.degree, -1, -1), self.coeffs):
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
                continue
            mono = "z" if power == 1 else f"z^{power}"
            terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms)

    def is_z(self) -> bool:
        return self.degree == 1 and self.constant == 0

    def is_z_minus_1(self) -> bool:
        return self.degree == 1 and self.constant == self.field.neg(1)


def z_minus_1(q: int) -> PolyOverFq:
    return PolyOverFq(q, (1, get_field(q).neg(1)))


def parse_poly(text: str, q: int) -> PolyOverFq:
    """Parse "z^3+z+1" / "2z^2+z+3" (integer coefficients in galois encoding)."""
    coeffs: Dict[int, int] = {}
    for raw in text.replace(" ", "").split("+"):
        if not raw:
            continue
        if "z" in raw:
            head, _, tail = raw.partition("z")
            c = int(head) if head else 1
            e = int(tail[1:]) if tail.startswith("^") else 1
        else:
            c, e = int(raw), 0
        coeffs[e] = get_field(q).add(coeffs.get(e, 0), c)
    deg = max(coeffs)
    return PolyOverFq(q, tuple(coeffs.get(e, 0) for e in range(deg, -1, -1)))


def star(phi: PolyOverFq) -> PolyOverFq:
    """φ*(z) = φ(0)^{-1} z^deg φ(1/z)."""
    if phi.constant == 0:
        raise ZeroConstantTerm(f"star undefined for {phi}: zero constant term")
    field = phi.field
    c0_inv = field.inv(phi.constant)
    reversed_coeffs = tuple(field.mul(c0_inv, c) for c in reversed(phi.coeffs))
    return PolyOverFq(phi.q, reversed_coeffs)


def is_self_conjugate(phi: PolyOverFq) -> bool:
    return phi.constant != 0 and star(phi) == phi


def to_galois(phi: PolyOverFq) -> galois.Poly:
    return galois.Poly(list(phi.coeffs), field=phi.field.GF)


def is_irreducible(phi: PolyOverFq) -> bool:
    """Trial division by every monic irreducible of degree <= deg/2."""
    target = to_galois(phi)
    zero = galois.Poly.Zero(phi.field.GF)
    for d in range(1, phi.degree // 2 + 1):
        for psi in irreducibles(phi.q, d):
            if target % to_galois(psi) == zero:
                return False
    return True


@lru_cache(maxsize=None)
def _irreducibles(q: int, d: int) -> Tuple[PolyOverFq, ...]:
    get_field(q)
    out = []
    for poly in galois.irreducible_polys(q, d):
        coeffs = tuple(int(c) for c in poly.coeffs.view(np.ndarray))
        out.append(PolyOverFq(q, coeffs))
    return tuple(sorted(out))


def irreducibles(q: int, d: int) -> List[PolyOverFq]:
    """All monic irreducibles of degree d over F_q, lexicographic order."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    return list(_irreducibles(q, d))


@lru_cache(maxsize=None)
def _classified(q: int, d: int) -> Tuple[Tuple[PolyOverFq, ...], Tuple[Tuple[PolyOverFq, PolyOverFq], ...]]:
    selfconj: List[PolyOverFq] = []
    pairs: List[Tuple[PolyOverFq, PolyOverFq]] = []
    for phi in _irreducibles(q, d):
        if phi.is_z():
            continue
        other = star(phi)
        if other == phi:
            selfconj.append(phi)
        elif phi < other:
            pairs.append((phi, other))
    return tuple(selfconj), tuple(pairs)


def self_conjugate_irreducibles(q: int, d: int, include_z_minus_1: bool = True) -> List[PolyOverFq]:
    polys = list(_classified(q, d)[0])
    if not include_z_minus_1:
        polys = [phi for phi in polys if not phi.is_z_minus_1()]
    return polys


def conjugate_pairs(q: int, d: int) -> List[Tuple[PolyOverFq, PolyOverFq]]:
    """Pairs {φ, φ*} with φ ≠ φ*, the lexicographically smaller member first."""
    return list(_classified(q, d)[1])


def n_star(q: int, d: int, include_z_minus_1: bool = True) -> int:
    """N*(q;d) by enumeration."""
    return len(self_conjugate_irreducibles(q, d, include_z_minus_1))


def m_star(q: int, d: int) -> int:
    """M*(q;d) by enumeration."""
    return len(conjugate_pairs(q, d))


# --- closed counts ------------------------------------------------------------


def mobius(n: int) -> int:
    if n == 1:
        return 1
    primes, exponents = galois.factors(n)
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(primes) % 2 else 1


def divisors(n: int) -> List[int]:
    return [e for e in range(1, n + 1) if n % e == 0]


def necklace_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q."""
    return sum(mobius(d // e) * q**e for e in divisors(d)) // d


@lru_cache(maxsize=None)
def n_star_count(q: int, d: int, include_z_minus_1: bool = True) -> int:
    """N*(q;d) from the Möbius formula over odd divisors (no enumeration)."""
    even_q = q % 2 == 0
    if d == 1:
        linear = 1 if even_q else 2
        return linear if include_z_minus_1 else linear - 1
    if d % 2:
        return 0
    half = d // 2
    c = 1 if even_q else 2
    total = sum(mobius(r) * (q ** (half // r) + 1 - c) for r in divisors(half) if r % 2)
    return total // d


@lru_cache(maxsize=None)
def m_star_count(q: int, d: int) -> int:
    """M*(q;d): unordered pairs {φ, φ*}, φ ≠ φ*, of degree d."""
    nonzero_constant = necklace_count(q, d) - (1 if d == 1 else 0)
    return (nonzero_constant - n_star_count(q, d)) // 2
