"""Class proportions and cycle-index generating functions for O±_{2n}(q), q even.

Rational-canonical-form data attach a partition λ_φ to each monic irreducible
φ ≠ z. A class label is valid for the orthogonal groups when λ_φ = λ_{φ*} and
the odd parts of λ_{z-1} occur with even multiplicity.

The sum series has coefficient of u^{2n} equal to p⁺ + p⁻ and the diff series
has p⁺ - p⁻, where p^ε is the expectation of the weight over O^ε_{2n}(q); both
start with a bare 1 in degree 0.

Usage:
    from ocycle.cycleindex import RcfData, class_proportions, cycle_index_series
    data = RcfData.from_mapping(2, {parse_poly("z^2+z+1", 2): make_partition([1])})
    class_proportions(data, 2)                      # p_plus=0, p_minus=1/3
    cycle_index_series(2, None, order=12, variant="sum")
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import InputError, InvalidData
from .orders import b_pair_product, b_self_conjugate
from .partitions import (
    EMPTY,
    Partition,
    Predicate,
    all_mults_even,
    iter_partitions,
    iter_partitions_up_to,
    odd_parts_even_mult,
)
from .qpoly import (
    PolyOverFq,
    check_orthogonal_q,
    conjugate_pairs,
    m_star_count,
    n_star_count,
    self_conjugate_irreducibles,
    star,
    z_minus_1,
)
from .series import TruncatedSeries, partition_sum_series

Number = Union[int, Fraction]
VARIANTS = ("sum", "diff", "omega-sum", "omega-diff")


@dataclass(frozen=True)
class FactorKey:
    """Which factor of the cycle-index product a weight is being asked about.

    kind is "z-1", "self" (self-conjugate φ ≠ z-1) or "pair" ({φ, φ*}, φ ≠ φ*).
    In counting mode `poly` is None and only kind/degree are known.
    """

    kind: str
    degree: int
    poly: Optional[PolyOverFq] = None
    partner: Optional[PolyOverFq] = None


Weight = Callable[[FactorKey, Partition], Number]
Z_MINUS_1_KEY = FactorKey("z-1", 1)


@dataclass(frozen=True)
class ProportionPair:
    p_plus: Fraction
    p_minus: Fraction

    def get(self, eps: int) -> Fraction:
        return self.p_plus if eps > 0 else self.p_minus


@dataclass(frozen=True)
class RcfData:
    """Finitely supported map φ ↦ λ_φ (empty partitions dropped, φ ≠ z)."""

    q: int
    items: Tuple[Tuple[PolyOverFq, Partition], ...]

    @classmethod
    def from_mapping(cls, q: int, mapping: Mapping[PolyOverFq, Partition]) -> "RcfData":
        items = []
        for phi, lam in mapping.items():
            if phi.q != q:
                raise InvalidData(f"{phi} is over F_{phi.q}, expected F_{q}")
            if lam:
                items.append((phi, lam))
        return cls(q, tuple(sorted(items, key=lambda kv: kv[0].sort_key())))

    def as_dict(self) -> Dict[PolyOverFq, Partition]:
        return dict(self.items)

    def get(self, phi: PolyOverFq) -> Partition:
        for psi, lam in self.items:
            if psi == phi:
                return lam
        return EMPTY

    @property
    def dimension(self) -> int:
        return sum(lam.size * phi.degree for phi, lam in self.items)

    @property
    def z_minus_1_partition(self) -> Partition:
        return self.get(z_minus_1(self.q))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{phi}:{lam}" for phi, lam in self.items) + "}"


def data_violations(data: RcfData, dim: Optional[int] = None) -> List[str]:
    problems: List[str] = []
    mapping = data.as_dict()
    for phi, lam in data.items:
        if phi.is_z():
            problems.append("λ_z must be empty")
            continue
        if mapping.get(star(phi), EMPTY) != lam:
            problems.append(f"λ_{phi} = {lam} differs from λ_(φ*) for φ* = {star(phi)}")
    if not odd_parts_even_mult(data.z_minus_1_partition):
        problems.append(f"odd parts of λ_(z-1) = {data.z_minus_1_partition} need even multiplicity")
    if dim is not None and data.dimension != dim:
        problems.append(f"data has dimension {data.dimension}, expected {dim}")
    return problems


def validate_o_data(data: RcfData, dim: Optional[int] = None) -> bool:
    return not data_violations(data, dim)


def _require_valid(data: RcfData, dim: Optional[int] = None) -> None:
    problems = data_violations(data, dim)
    if problems:
        raise InvalidData("; ".join(problems))


# --- unipotent (z-1) weights --------------------------------------------------------


def p_sum_unipotent(lam: Partition, q: int) -> Fraction:
    """p⁺(λ) + p⁻(λ) for the unipotent class data {z-1: λ}."""
    if not odd_parts_even_mult(lam):
        return Fraction(0)
    denom = Fraction(q) ** (lam.n + (lam.size + lam.o) // 2)
    for mi in lam.multiplicities.values():
        for j in range(1, mi // 2 + 1):
            denom *= 1 - Fraction(1, q ** (2 * j))
    return Fraction(q) ** lam.l / denom


def p_diff_unipotent(lam: Partition, q: int) -> Fraction:
    """p⁺(λ) - p⁻(λ); nonzero only when every multiplicity is even."""
    if not all_mults_even(lam):
        return Fraction(0)
    denom = Fraction(q) ** (sum(c * c for c in lam.conjugate.parts) // 2)
    for mi in lam.multiplicities.values():
        for j in range(1, mi // 2 + 1):
            denom *= 1 - Fraction(1, q ** (2 * j))
    return 1 / denom


def factor_values(key: FactorKey, lam: Partition, q: int) -> Tuple[Fraction, Fraction]:
    """(sum-series, diff-series) contribution of one factor with partition λ."""
    if key.kind == "z-1":
        return p_sum_unipotent(lam, q), p_diff_unipotent(lam, q)
    if not lam:
        return Fraction(1), Fraction(1)
    if key.kind == "self":
        inv_b = Fraction(1, b_self_conjugate(key.degree, lam, q))
        return inv_b, (-inv_b if lam.size % 2 else inv_b)
    if key.kind == "pair":
        inv_bb = Fraction(1, b_pair_product(key.degree, lam, q))
        return inv_bb, inv_bb
    raise InputError(f"unknown factor kind {key.kind!r}")


def _combine(sum_val: Fraction, diff_val: Fraction) -> ProportionPair:
    return ProportionPair((sum_val + diff_val) / 2, (sum_val - diff_val) / 2)


def class_proportions(data: RcfData, q: int) -> ProportionPair:
    """Proportions of O⁺ and O⁻ (of dimension data.dimension) with this class data."""
    check_orthogonal_q(q)
    if data.q != q:
        raise InvalidData(f"data over F_{data.q} evaluated at q={q}")
    _require_valid(data)
    sum_val, diff_val = factor_values(Z_MINUS_1_KEY, data.z_minus_1_partition, q)
    for phi, lam in data.items:
        if phi.is_z_minus_1():
            continue
        partner = star(phi)
        if partner == phi:
            s, d = factor_values(FactorKey("self", phi.degree, phi), lam, q)
        elif phi < partner:
            s, d = factor_values(FactorKey("pair", phi.degree, phi, partner), lam, q)
        else:
            continue
        sum_val *= s
        diff_val *= d
    return _combine(sum_val, diff_val)


def omega_class_proportion(data: RcfData, q: int, eps: int) -> Fraction:
    """Proportion of Ω^ε (index 2 in O^ε) with this class data."""
    props = class_proportions(data, q)
    if data.z_minus_1_partition.l % 2:
        return Fraction(0)
    if data.dimension == 0:
        return Fraction(1)
    return 2 * props.get(eps)


# --- generating functions ---------------------------------------------------------------


def _z_minus_1_predicate(variant: str) -> Predicate:
    if variant in {"diff", "omega-diff"}:
        return all_mults_even
    if variant == "omega-sum":
        return lambda lam: odd_parts_even_mult(lam) and lam.l % 2 == 0
    return odd_parts_even_mult


def _unit(_key: FactorKey, _lam: Partition) -> Number:
    return 1


def _factor_series(key: FactorKey, weight: Weight, q: int, order: int, diff: bool) -> TruncatedSeries:
    step = key.degree if key.kind == "self" else 2 * key.degree
    pick = 1 if diff else 0

    def term(lam: Partition) -> Fraction:
        if not lam:
            return Fraction(weight(key, lam))
        return Fraction(weight(key, lam)) * factor_values(key, lam, q)[pick]

    return partition_sum_series(term, None, step, order)


def cycle_index_series(
    q: int,
    weight: Optional[Weight],
    order: int,
    variant: str = "sum",
    mode: str = "count",
) -> TruncatedSeries:
    """Cycle-index series with x_{φ,λ} := weight(key, λ), truncated at `order`.

    mode="count" groups polynomials into classes (self-conjugate of degree 2d,
    pairs of degree d) and raises each class factor to the class size; the
    weight then only sees kind and degree. mode="enumerate" walks the actual
    polynomials and passes them in FactorKey.poly.
    """
    check_orthogonal_q(q)
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if mode not in {"count", "enumerate"}:
        raise InputError(f"unknown mode {mode!r}")
    w = weight or _unit
    diff = variant in {"diff", "omega-diff"}
    pick = 1 if diff else 0

    def z_term(lam: Partition) -> Fraction:
        return Fraction(w(Z_MINUS_1_KEY, lam)) * factor_values(Z_MINUS_1_KEY, lam, q)[pick]

    result = partition_sum_series(z_term, _z_minus_1_predicate(variant), 1, order)

    for degree in range(2, order + 1, 2):
        if mode == "count":
            count = n_star_count(q, degree, include_z_minus_1=False)
            if count:
                result = result * _factor_series(FactorKey("self", degree), w, q, order, diff) ** count
        else:
            for phi in self_conjugate_irreducibles(q, degree, include_z_minus_1=False):
                result = result * _factor_series(FactorKey("self", degree, phi), w, q, order, diff)
    for degree in range(1, order // 2 + 1):
        if mode == "count":
            count = m_star_count(q, degree)
            if count:
                result = result * _factor_series(FactorKey("pair", degree), w, q, order, diff) ** count
        else:
            for phi, partner in conjugate_pairs(q, degree):
                result = result * _factor_series(FactorKey("pair", degree, phi, partner), w, q, order, diff)
    return result


def proportions_from_series(q: int, weight: Optional[Weight], dim: int, mode: str = "count") -> ProportionPair:
    """(E⁺[weight], E⁻[weight]) over O^±_dim(q) by coefficient extraction."""
    if dim % 2 or dim < 2:
        raise InputError(f"dimension must be even and >= 2, got {dim}")
    s = cycle_index_series(q, weight, dim, "sum", mode).coeff(dim)
    d = cycle_index_series(q, weight, dim, "diff", mode).coeff(dim)
    return _combine(s, d)


def omega_proportions_from_series(q: int, weight: Optional[Weight], dim: int, mode: str = "count") -> ProportionPair:
    """(E over Ω⁺, E over Ω⁻) of weight·[l(λ_{z-1}) even], by extraction."""
    if dim % 2 or dim < 2:
        raise InputError(f"dimension must be even and >= 2, got {dim}")
    s = cycle_index_series(q, weight, dim, "omega-sum", mode).coeff(dim)
    d = cycle_index_series(q, weight, dim, "omega-diff", mode).coeff(dim)
    return ProportionPair(s + d, s - d)


# --- enumeration of class data --------------------------------------------------------


def _slot_polys(q: int, dim: int) -> List[Tuple[FactorKey, Tuple[PolyOverFq, ...]]]:
    slots: List[Tuple[FactorKey, Tuple[PolyOverFq, ...]]] = [(Z_MINUS_1_KEY, (z_minus_1(q),))]
    for degree in range(2, dim + 1, 2):
        for phi in self_conjugate_irreducibles(q, degree, include_z_minus_1=False):
            slots.append((FactorKey("self", degree, phi), (phi,)))
    for degree in range(1, dim // 2 + 1):
        for phi, partner in conjugate_pairs(q, degree):
            slots.append((FactorKey("pair", degree, phi, partner), (phi, partner)))
    return slots


def _unit_cost(key: FactorKey) -> int:
    return 2 * key.degree if key.kind == "pair" else key.degree


def _slot_choices(key: FactorKey, budget: int, part_filter: Optional[Predicate]) -> Iterator[Partition]:
    unit = _unit_cost(key)
    pred = odd_parts_even_mult if key.kind == "z-1" else None
    for lam in iter_partitions_up_to(budget // unit, pred):
        if lam and part_filter is not None and not part_filter(lam):
            continue
        yield lam


def iter_o_data(q: int, dim: int, part_filter: Optional[Predicate] = None) -> Iterator[RcfData]:
    """Every valid RcfData of dimension `dim` (explicit polynomials; small q only)."""
    check_orthogonal_q(q)
    slots = _slot_polys(q, dim)

    def walk(idx: int, remaining: int, chosen: Dict[PolyOverFq, Partition]) -> Iterator[RcfData]:
        if remaining == 0:
            yield RcfData.from_mapping(q, chosen)
            return
        if idx == len(slots):
            return
        key, polys = slots[idx]
        for lam in _slot_choices(key, remaining, part_filter):
            for phi in polys:
                chosen[phi] = lam
            yield from walk(idx + 1, remaining - lam.size * _unit_cost(key), chosen)
            for phi in polys:
                del chosen[phi]

    yield from walk(0, dim, {})


@dataclass(frozen=True)
class DataType:
    """Class-level data: a partition for z-1 plus multisets per factor class."""

    z_minus_1: Partition
    classes: Tuple[Tuple[FactorKey, Tuple[Partition, ...]], ...]


def data_type_proportions(dtype: DataType, q: int) -> ProportionPair:
    sum_val, diff_val = factor_values(Z_MINUS_1_KEY, dtype.z_minus_1, q)
    for key, parts in dtype.classes:
        for lam in parts:
            s, d = factor_values(key, lam, q)
            sum_val *= s
            diff_val *= d
    return _combine(sum_val, diff_val)


def _multisets(candidates: Sequence[Partition], start: int, budget_units: int, max_count: int) -> Iterator[List[Partition]]:
    yield []
    if max_count == 0:
        return
    for idx in range(start, len(candidates)):
        lam = candidates[idx]
        if lam.size > budget_units:
            continue
        for rest in _multisets(candidates, idx, budget_units - lam.size, max_count - 1):
            yield [lam] + rest


def _assignments(n_polys: int, parts: Sequence[Partition]) -> int:
    """Ways to give the multiset `parts` to distinct polynomials out of n_polys."""
    k = len(parts)
    if k > n_polys:
        return 0
    ways = factorial(n_polys) // factorial(n_polys - k)
    counts: Dict[Partition, int] = {}
    for lam in parts:
        counts[lam] = counts.get(lam, 0) + 1
    for c in counts.values():
        ways //= factorial(c)
    return ways


def iter_o_data_types(q: int, dim: int, part_filter: Optional[Predicate] = None) -> Iterator[Tuple[DataType, int]]:
    """(DataType, number of RcfData of that type) for every valid type of dimension `dim`."""
    check_orthogonal_q(q)
    classes: List[Tuple[FactorKey, int]] = []
    for degree in range(2, dim + 1, 2):
        count = n_star_count(q, degree, include_z_minus_1=False)
        if count:
            classes.append((FactorKey("self", degree), count))
    for degree in range(1, dim // 2 + 1):
        count = m_star_count(q, degree)
        if count:
            classes.append((FactorKey("pair", degree), count))

    def walk(idx: int, remaining: int, acc: List[Tuple[FactorKey, Tuple[Partition, ...]]], mult: int) -> Iterator[Tuple[DataType, int]]:
        if idx == len(classes):
            for lam in iter_partitions(remaining, odd_parts_even_mult):
                if lam and part_filter is not None and not part_filter(lam):
                    continue
                yield DataType(lam, tuple(acc)), mult
            return
        key, n_polys = classes[idx]
        unit = _unit_cost(key)
        candidates = [
            lam
            for lam in iter_partitions_up_to(remaining // unit)
            if lam and (part_filter is None or part_filter(lam))
        ]
        for parts in _multisets(candidates, 0, remaining // unit, n_polys):
            used = sum(lam.size for lam in parts) * unit
            ways = _assignments(n_polys, parts)
            if ways == 0:
                continue
            if parts:
                acc.append((key, tuple(parts)))
            yield from walk(idx + 1, remaining - used, acc, mult * ways)
            if parts:
                acc.pop()

    yield from walk(0, dim, [], 1)
