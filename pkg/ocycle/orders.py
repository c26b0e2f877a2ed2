"""Exact orders of GL, U, Sp, O± and Ω±, the A/B factors and GL centralizers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BadDimension, HalfPowerExposure, InputError
from .partitions import Partition
from .qpoly import PolyOverFq, is_self_conjugate

FAMILIES = ("GL", "U", "Sp", "Oplus", "Ominus", "OmegaPlus", "OmegaMinus", "Oodd")


def parse_sign(text: str) -> int:
    token = str(text).strip().lower()
    if token in {"+", "+1", "1", "plus", "p"}:
        return 1
    if token in {"-", "-1", "minus", "m"}:
        return -1
    raise InputError(f"unrecognised sign {text!r}; use + or -")


def sign_symbol(eps: int) -> str:
    return "+" if eps > 0 else "-"


@dataclass(frozen=True)
class GroupKind:
    family: str
    dimension: int
    q: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InputError(f"unknown group family {self.family!r}")
        if self.dimension < 0:
            raise BadDimension(f"negative dimension {self.dimension}")
        even_only = self.family not in {"GL", "U", "Oodd"}
        if even_only and self.dimension % 2:
            raise BadDimension(f"{self.family} needs an even dimension, got {self.dimension}")
        if self.family == "Oodd" and self.dimension % 2 == 0:
            raise BadDimension(f"Oodd needs an odd dimension, got {self.dimension}")


def _gl_fraction(n: int, Q: int) -> Fraction:
    # Q^{n²} Π_{i=1..n} (1 - Q^{-i}); Q may be negative (unitary groups).
    value = Fraction(Q) ** (n * n)
    for i in range(1, n + 1):
        value *= 1 - Fraction(1, Q**i)
    return value


@lru_cache(maxsize=None)
def gl_order(n: int, q: int) -> int:
    return int(_gl_fraction(n, q))


@lru_cache(maxsize=None)
def u_order(n: int, q: int) -> int:
    """|U_n(q)| = (-1)^n |GL_n(-q)|."""
    return int((-1) ** n * _gl_fraction(n, -q))


@lru_cache(maxsize=None)
def sp_order(dim: int, q: int) -> int:
    if dim % 2:
        raise BadDimension(f"symplectic dimension must be even, got {dim}")
    n = dim // 2
    value = q ** (n * n)
    for i in range(1, n + 1):
        value *= q ** (2 * i) - 1
    return value


@lru_cache(maxsize=None)
def o_order(eps: int, dim: int, q: int) -> int:
    """|O^ε_{2n}(q)| = 2 q^{n²-n} (q^n - ε) Π_{i<n} (q^{2i} - 1)."""
    if dim % 2:
        raise BadDimension(f"O^± needs an even dimension, got {dim}")
    n = dim // 2
    if n == 0:
        if eps < 0:
            raise BadDimension("O^-_0 does not exist")
        return 1
    value = 2 * q ** (n * n - n) * (q**n - eps)
    for i in range(1, n):
        value *= q ** (2 * i) - 1
    return value


def group_order(kind: GroupKind) -> int:
    fam, dim, q = kind.family, kind.dimension, kind.q
    if fam == "GL":
        return gl_order(dim, q)
    if fam == "U":
        return u_order(dim, q)
    if fam == "Sp":
        return sp_order(dim, q)
    if fam == "Oodd":
        # the radical quotient identifies O_{2n+1}(q) with Sp_{2n}(q) for even q
        return sp_order(dim - 1, q)
    eps = 1 if fam in {"Oplus", "OmegaPlus"} else -1
    order = o_order(eps, dim, q)
    if fam.startswith("Omega"):
        return order // 2 if dim else 1
    return order


# --- A and B factors ------------------------------------------------------------


def b_exponent_bracket(lam: Partition) -> Fraction:
    """Σ_{h<i} h m_h m_i + (1/2) Σ_i (i-1) m_i²."""
    items = sorted(lam.multiplicities.items())
    total = Fraction(0)
    for idx, (i, mi) in enumerate(items):
        for h, mh in items[:idx]:
            total += h * mh * mi
        total += Fraction((i - 1) * mi * mi, 2)
    return total


def b_self_conjugate(degree: int, lam: Partition, q: int) -> int:
    """B(φ,λ) for self-conjugate φ ≠ z-1 of even degree."""
    if degree % 2:
        raise InputError(f"self-conjugate factor needs even degree, got {degree}")
    exponent = degree * b_exponent_bracket(lam)
    value = q ** int(exponent)
    for mi in lam.multiplicities.values():
        value *= u_order(mi, q ** (degree // 2))
    return value


def b_pair_product(degree: int, lam: Partition, q: int) -> int:
    """B(φ,λ)·B(φ*,λ) for a conjugate pair of degree `degree`."""
    exponent = 2 * degree * b_exponent_bracket(lam)
    value = q ** int(exponent)
    for mi in lam.multiplicities.values():
        value *= gl_order(mi, q**degree)
    return value


def _check_not_z_minus_1(phi: PolyOverFq) -> None:
    if phi.is_z_minus_1():
        raise InputError("A/B factors are not defined for z-1")


def a_factor(phi: PolyOverFq, lam: Partition, i: int, squared: bool = False) -> int:
    """A(φ,λ,i); for φ ≠ φ* only A² is rational, so `squared` must be set."""
    _check_not_z_minus_1(phi)
    mi = lam.m(i)
    if is_self_conjugate(phi):
        value = u_order(mi, phi.q ** (phi.degree // 2))
        return value * value if squared else value
    if not squared:
        raise HalfPowerExposure(f"A({phi},{lam},{i}) is |GL|^(1/2); request squared=True")
    return gl_order(mi, phi.q**phi.degree)


def b_factor(phi: PolyOverFq, lam: Partition) -> int:
    _check_not_z_minus_1(phi)
    if not is_self_conjugate(phi):
        raise HalfPowerExposure(f"B({phi},λ) alone is irrational for φ ≠ φ*; use b_pair_factor")
    return b_self_conjugate(phi.degree, lam, phi.q)


def b_pair_factor(phi: PolyOverFq, lam: Partition) -> int:
    """B(φ,λ)·B(φ*,λ); equals B(φ,λ)² when φ is self-conjugate."""
    _check_not_z_minus_1(phi)
    if is_self_conjugate(phi):
        value = b_self_conjugate(phi.degree, lam, phi.q)
        return value * value
    return b_pair_product(phi.degree, lam, phi.q)


# --- centralizers -----------------------------------------------------------------


def gl_unip_centralizer(lam: Partition, q: int) -> int:
    """q^{Σ(λ'_i)²} Π_i Π_{k=1..m_i} (1 - q^{-k})."""
    value = Fraction(q) ** sum(c * c for c in lam.conjugate.parts)
    for mi in lam.multiplicities.values():
        for k in range(1, mi + 1):
            value *= 1 - Fraction(1, q**k)
    return int(value)


def gl_unipotent_proportion(lam: Partition, q: int) -> Fraction:
    """Proportion of GL_{|λ|}(q) that is unipotent of Jordan type λ."""
    return Fraction(1, gl_unip_centralizer(lam, q))
