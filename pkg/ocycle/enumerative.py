"""Closed-form enumeration in O±_{2n}(q): fixed spaces, unipotents, cyclic matrices.

Every quantity here can also be read off the cycle-index series with the
matching weight plug-in; `method="series"` does exactly that and the tests
compare the two routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .cycleindex import ProportionPair, omega_proportions_from_series, proportions_from_series
from .errors import BadDimension, InputError
from .orders import gl_order
from .pool import parallel_map
from .qpoly import check_orthogonal_q, m_star_count, n_star_count
from .series import TruncatedSeries
from .weights import (
    cyclic_weight,
    fixed_space_weight,
    semisimple_weight,
    separable_weight,
    unipotent_fixed_space_weight,
)


def _half(dim: int) -> int:
    if dim < 2 or dim % 2:
        raise BadDimension(f"dimension must be even and >= 2, got {dim}")
    return dim // 2


def _prod_one_minus(q: int, exps: range) -> Fraction:
    """Π_{t in exps} (1 - q^{-t}); empty products are 1."""
    out = Fraction(1)
    for t in exps:
        out *= 1 - Fraction(1, q**t)
    return out


def _prod_minus_one(q: int, exps: range) -> int:
    """Π_{t in exps} (q^t - 1)."""
    out = 1
    for t in exps:
        out *= q**t - 1
    return out


def _fixed_even_parts(n: int, j: int, q: int) -> Tuple[Fraction, Fraction]:
    """The two terms of the even-k formula, without the 1/2 factors."""
    gl = gl_order(j, q * q)
    alt = Fraction(0)
    for i in range(n - j + 1):
        alt += Fraction(-1) ** i / (Fraction(q) ** ((2 * j - 1) * i) * _prod_minus_one(q, range(2, 2 * i + 1, 2)))
    main = Fraction(q**j, gl) * alt
    correction = Fraction((-1) ** (n - j), q ** (2 * j * (n - j)) * gl * _prod_minus_one(q, range(2, 2 * (n - j) + 1, 2)))
    return main, correction


def fixed_space_prob(eps: int, dim: int, k: int, q: int) -> Fraction:
    """Probability that an element of O^ε_dim(q) has a k-dimensional fixed space."""
    check_orthogonal_q(q)
    n = _half(dim)
    if k < 0 or k > dim:
        return Fraction(0)
    if k % 2 == 0:
        main, correction = _fixed_even_parts(n, k // 2, q)
        return main / 2 + eps * correction / 2
    j = (k - 1) // 2
    total = Fraction(0)
    for i in range(n - j):
        total += Fraction((-1) ** i, q ** (i * i + 2 * (j + 1) * i)) / _prod_one_minus(q, range(2, 2 * i + 1, 2))
    return total / (2 * q**j * gl_order(j, q * q))


def omega_fixed_space_prob(eps: int, dim: int, k: int, q: int) -> Fraction:
    """Probability that an element of Ω^ε_dim(q) has a k-dimensional fixed space."""
    check_orthogonal_q(q)
    n = _half(dim)
    if k < 0 or k > dim or k % 2:
        return Fraction(0)
    main, correction = _fixed_even_parts(n, k // 2, q)
    return main + eps * correction


def unip_fixed_prob(eps: int, dim: int, k: int, q: int) -> Fraction:
    """Proportion of O^ε_dim(q) that is unipotent with a k-dimensional fixed space."""
    check_orthogonal_q(q)
    n = _half(dim)
    if k < 1 or k > dim:
        return Fraction(0)
    if k % 2 == 0:
        j = k // 2
        top = _prod_one_minus(q, range(2 * j, 2 * (n - 1) + 1, 2))
        bottom = Fraction(q) ** (n - 2 * j) * gl_order(j, q * q) * _prod_one_minus(q, range(2, 2 * (n - j) + 1, 2))
        return top / bottom * (Fraction(1, 2) + Fraction(eps, 2 * q**n))
    j = (k - 1) // 2
    top = _prod_one_minus(q, range(2 * (j + 1), 2 * (n - 1) + 1, 2))
    bottom = _prod_one_minus(q, range(2, 2 * (n - j - 1) + 1, 2))
    return top / bottom / (2 * q ** (n - 1) * gl_order(j, q * q))


def omega_unip_fixed_prob(eps: int, dim: int, k: int, q: int) -> Fraction:
    """Proportion of Ω^ε_dim(q) that is unipotent with a k-dimensional fixed space."""
    if k % 2:
        return Fraction(0)
    return 2 * unip_fixed_prob(eps, dim, k, q)


def unip_count(eps: int, dim: int, q: int) -> int:
    """Number of unipotent elements of O^ε_dim(q): q^{2n²-2n+1}(1 + 1/q ∓ 1/q^n)."""
    check_orthogonal_q(q)
    n = _half(dim)
    value = Fraction(q) ** (2 * n * n - 2 * n + 1) * (1 + Fraction(1, q) - Fraction(eps, q**n))
    return int(value)


# --- tables -------------------------------------------------------------------------------


@dataclass(frozen=True)
class FixedSpaceRow:
    k: int
    p_plus: Fraction
    p_minus: Fraction


@dataclass(frozen=True)
class FixedSpaceTable:
    dim: int
    q: int
    rows: Tuple[FixedSpaceRow, ...]

    def column_sums(self) -> Tuple[Fraction, Fraction]:
        return sum((r.p_plus for r in self.rows), Fraction(0)), sum((r.p_minus for r in self.rows), Fraction(0))


_CLOSED = {
    "fixed": fixed_space_prob,
    "omega-fixed": omega_fixed_space_prob,
    "unipotent": unip_fixed_prob,
    "omega-unipotent": omega_unip_fixed_prob,
}


def _series_row(kind: str, dim: int, k: int, q: int) -> ProportionPair:
    if kind == "fixed":
        return proportions_from_series(q, fixed_space_weight(k), dim)
    if kind == "omega-fixed":
        return omega_proportions_from_series(q, fixed_space_weight(k), dim)
    if kind == "unipotent":
        return proportions_from_series(q, unipotent_fixed_space_weight(k), dim)
    if kind == "omega-unipotent":
        return omega_proportions_from_series(q, unipotent_fixed_space_weight(k), dim)
    raise InputError(f"unknown table kind {kind!r}")


def fixed_space_table(dim: int, q: int, kind: str = "fixed", method: str = "closed") -> FixedSpaceTable:
    """Rows k = 0..dim of a fixed-space distribution, by closed form or series."""
    if kind not in _CLOSED:
        raise InputError(f"unknown table kind {kind!r}; expected one of {sorted(_CLOSED)}")
    if method not in {"closed", "series"}:
        raise InputError(f"unknown method {method!r}")
    check_orthogonal_q(q)
    _half(dim)

    def row(k: int) -> FixedSpaceRow:
        if method == "closed":
            fn = _CLOSED[kind]
            return FixedSpaceRow(k, fn(1, dim, k, q), fn(-1, dim, k, q))
        pair = _series_row(kind, dim, k, q)
        return FixedSpaceRow(k, pair.p_plus, pair.p_minus)

    rows = parallel_map(row, list(range(dim + 1)))
    return FixedSpaceTable(dim, q, tuple(rows))


# --- cyclic matrices ----------------------------------------------------------------------


@dataclass(frozen=True)
class CyclicSeries:
    sum: TruncatedSeries
    diff: TruncatedSeries

    def plus(self) -> TruncatedSeries:
        return (self.sum + self.diff).scale(Fraction(1, 2))

    def minus(self) -> TruncatedSeries:
        return (self.sum - self.diff).scale(Fraction(1, 2))


def _geometric_tail(c: Fraction, d: int, order: int, ratio: Fraction) -> TruncatedSeries:
    """1 + c·u^d / (1 - ratio·u^d) to `order`."""
    coeffs = [Fraction(0)] * (order + 1)
    coeffs[0] = Fraction(1)
    j = 1
    while j * d <= order:
        coeffs[j * d] += c * ratio ** (j - 1)
        j += 1
    return TruncatedSeries.from_coeffs(coeffs, order)


def cyclic_gf(q: int, order: int) -> CyclicSeries:
    """C_{O⁺}(u) ± C_{O⁻}(u), where u^n marks dimension 2n."""
    check_orthogonal_q(q)
    total = _geometric_tail(Fraction(1), 1, order, Fraction(1, q))
    diff = TruncatedSeries.one(order)
    for d in range(1, order + 1):
        ns = n_star_count(q, 2 * d)
        if ns:
            qd = q**d
            total = total * _geometric_tail(Fraction(1, qd + 1), d, order, Fraction(1, qd)) ** ns
            diff = diff * _geometric_tail(Fraction(-1, qd + 1), d, order, Fraction(-1, qd)) ** ns
        ms = m_star_count(q, d)
        if ms:
            qd = q**d
            pair = _geometric_tail(Fraction(1, qd - 1), d, order, Fraction(1, qd)) ** ms
            total = total * pair
            diff = diff * pair
    return CyclicSeries(total, diff)


def cyclic_proportion(eps: int, dim: int, q: int) -> Fraction:
    n = _half(dim)
    gf = cyclic_gf(q, n)
    return (gf.sum.coeff(n) + eps * gf.diff.coeff(n)) / 2


def cyclic_proportion_from_series(eps: int, dim: int, q: int) -> Fraction:
    return proportions_from_series(q, cyclic_weight, dim).get(eps)


def separable_proportion(eps: int, dim: int, q: int) -> Fraction:
    return proportions_from_series(q, separable_weight, dim).get(eps)


def semisimple_proportion(eps: int, dim: int, q: int) -> Fraction:
    return proportions_from_series(q, semisimple_weight, dim).get(eps)


def omega_fixed_space_table(dim: int, q: int, method: str = "closed") -> FixedSpaceTable:
    return fixed_space_table(dim, q, "omega-fixed", method)


def unip_fixed_table(dim: int, q: int, method: str = "closed") -> FixedSpaceTable:
    return fixed_space_table(dim, q, "unipotent", method)
