"""Truncated formal power series in u with exact rational coefficients.

The arithmetic runs on sympy's sparse ring QQ[u] and its `ring_series`
helpers; coefficients cross the module boundary as `Fraction`.

Usage:
    from ocycle.series import TruncatedSeries, monomial_product, GeometricFamily
    one_minus_u = TruncatedSeries.from_coeffs([1, -1], order=50)
    (one_minus_u * one_minus_u.inv()).coeffs   # (1, 0, 0, ...)
    # Π_{i>=1} (1 - u^2 / 2^(2i-1)) to order 4
    monomial_product([GeometricFamily(c=Fraction(-1, 2), r=Fraction(1, 4), e=2)], order=4)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_mul, rs_pow, rs_series_inversion, rs_trunc
from sympy.polys.rings import PolyElement, ring

from .errors import DivergentFamily, NonUnitConstantTerm
from .partitions import Partition, Predicate, iter_partitions

Number = Union[int, Fraction]

SERIES_RING, U = ring("u", QQ)


def format_rational(x: Number) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_qq(c: Number):
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def from_qq(c) -> Fraction:
    return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Σ_{i<=order} c_i u^i held as an element of QQ[u]; everything above `order` is unknown."""

    poly: PolyElement
    order: int

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Number], order: int) -> "TruncatedSeries":
        terms = {(i,): to_qq(c) for i, c in enumerate(coeffs[: order + 1]) if c}
        return cls(SERIES_RING.from_dict(terms), order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(SERIES_RING.zero, order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(SERIES_RING.one, order)

    @classmethod
    def monomial(cls, c: Number, e: int, order: int) -> "TruncatedSeries":
        if e > order or not c:
            return cls.zero(order)
        return cls(U**e * to_qq(c), order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and not (self.poly - other.poly)

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def coeff(self, i: int) -> Fraction:
        if i < 0 or i > self.order:
            raise IndexError(f"coefficient {i} outside truncation order {self.order}")
        return from_qq(self.poly.get((i,), QQ.zero))

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(self.coeff(i) for i in range(self.order + 1))

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(rs_trunc(self.poly, U, order + 1), order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(rs_trunc(self.poly + other.poly, U, n + 1), n)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.poly, self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c: Number) -> "TruncatedSeries":
        return TruncatedSeries(self.poly.mul_ground(to_qq(c)), self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(rs_mul(self.poly, other.poly, U, n + 1), n)

    def _require_unit(self) -> None:
        if not self.poly.get(SERIES_RING.zero_monom):
            raise NonUnitConstantTerm("series with zero constant term has no inverse")

    def inv(self) -> "TruncatedSeries":
        self._require_unit()
        return TruncatedSeries(rs_series_inversion(self.poly, U, self.order + 1), self.order)

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if exponent == 0:
            return TruncatedSeries.one(self.order)
        if exponent < 0:
            self._require_unit()
        return TruncatedSeries(rs_pow(self.poly, exponent, U, self.order + 1), self.order)

    def substitute_power(self, d: int) -> "TruncatedSeries":
        """u ↦ u^d, keeping the same truncation order."""
        if d < 1:
            raise ValueError("substitution power must be >= 1")
        return TruncatedSeries(rs_trunc(self.poly.compose(U, U**d), U, self.order + 1), self.order)

    def __str__(self) -> str:
        pieces: List[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else (" u" if i == 1 else f" u^{i}")
            sign = "-" if c < 0 else "+"
            body = format_rational(abs(c)) + mono
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces) if pieces else "0"


# Module-level aliases matching the operation names used across the package.
def ts_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def ts_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def ts_inv(a: TruncatedSeries) -> TruncatedSeries:
    return a.inv()


def ts_coeff(a: TruncatedSeries, i: int) -> Fraction:
    return a.coeff(i)


def ts_substitute_power(a: TruncatedSeries, d: int) -> TruncatedSeries:
    return a.substitute_power(d)


@dataclass(frozen=True)
class GeometricFamily:
    """Π_{i>=0} (1 + c·r^i·u^e), or its reciprocal when `inverse` is set.

    The exponent stays fixed; the product converges because |r| < 1, and its
    coefficients are exact by Euler's expansions:
        Π (1 + z r^i)   = Σ_j z^j r^{j(j-1)/2} / ((1-r)...(1-r^j))
        Π (1 - z r^i)^-1 = Σ_j z^j / ((1-r)...(1-r^j))
    """

    c: Fraction
    r: Fraction
    e: int
    inverse: bool = False


@dataclass(frozen=True)
class GrowingFamily:
    """Π_{i>=start} (1 + coeff(i)·u^{exponent(i)}) with exponent(i) → ∞."""

    coeff: Callable[[int], Number]
    exponent: Callable[[int], int]
    start: int = 1
    max_factors: int = 10_000


Factor = Union[Tuple[Number, int], GeometricFamily, GrowingFamily]


def _geometric_series(fam: GeometricFamily, order: int) -> TruncatedSeries:
    c, r = Fraction(fam.c), Fraction(fam.r)
    if fam.e < 1:
        raise DivergentFamily("geometric family needs exponent >= 1")
    if abs(r) >= 1:
        raise DivergentFamily(f"factors 1 + c·r^i·u^{fam.e} with |r| = {abs(r)} >= 1 do not converge")
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    denom = Fraction(1)
    j = 1
    while j * fam.e <= order:
        denom *= 1 - r**j
        if fam.inverse:
            # Π (1 + c r^i u^e)^-1 = Π (1 - (-c) r^i u^e)^-1
            out[j * fam.e] = (-c) ** j / denom
        else:
            out[j * fam.e] = c**j * r ** (j * (j - 1) // 2) / denom
        j += 1
    return TruncatedSeries.from_coeffs(out, order)


def monomial_product(factors: Iterable[Factor], order: int) -> TruncatedSeries:
    """Exact product of (1 + c·u^e) factors, finite or infinite families, to `order`."""
    result = TruncatedSeries.one(order)
    for factor in factors:
        if isinstance(factor, GeometricFamily):
            result = result * _geometric_series(factor, order)
        elif isinstance(factor, GrowingFamily):
            i = factor.start
            seen = 0
            while True:
                e = factor.exponent(i)
                if e > order:
                    break
                seen += 1
                if seen > factor.max_factors:
                    raise DivergentFamily("family exponents stay bounded; product is not formally convergent")
                if e < 1:
                    raise DivergentFamily("infinite family needs exponents >= 1")
                result = result * (TruncatedSeries.one(order) + TruncatedSeries.monomial(factor.coeff(i), e, order))
                i += 1
        else:
            c, e = factor
            if e > order:
                continue
            result = result * (TruncatedSeries.one(order) + TruncatedSeries.monomial(c, e, order))
    return result


def partition_sum_series(
    weight: Callable[[Partition], Number],
    predicate: Optional[Predicate],
    step: int,
    order: int,
) -> TruncatedSeries:
    """Σ weight(λ)·u^{|λ|·step} over partitions passing `predicate`, |λ|·step <= order."""
    if step < 1:
        raise ValueError("step must be >= 1")
    out = [Fraction(0)] * (order + 1)
    size = 0
    while size * step <= order:
        total = Fraction(0)
        for lam in iter_partitions(size, predicate):
            total += Fraction(weight(lam))
        out[size * step] = total
        size += 1
    return TruncatedSeries.from_coeffs(out, order)


def pochhammer(x: Fraction, terms: int) -> Fraction:
    """(1 - x)(1 - x^2)...(1 - x^terms); 1 when terms <= 0."""
    out = Fraction(1)
    for i in range(1, terms + 1):
        out *= 1 - x**i
    return out
