"""Verification suites: closed forms against series, series against the oracle.

Each suite returns a list of CheckResult; `run_suite` dispatches by name and
the CLI turns any failed check into exit code 1.

Usage:
    from ocycle.verify import run_suite
    results = run_suite("oracle", q=2, max_dim=6)
    assert all(r.passed for r in results)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from . import log
from .cycleindex import (
    RcfData,
    class_proportions,
    cycle_index_series,
    data_type_proportions,
    iter_o_data_types,
    omega_class_proportion,
    p_diff_unipotent,
    p_sum_unipotent,
)
from .enumerative import (
    cyclic_proportion,
    cyclic_proportion_from_series,
    fixed_space_prob,
    fixed_space_table,
    omega_fixed_space_prob,
    unip_count,
    unip_fixed_prob,
)
from .errors import InputError
from .measures import (
    VARIANTS,
    MeasureParams,
    empirical_tv,
    finite_group_masses,
    k1,
    k2,
    limit_error_bound,
    mass,
    mass_bracket,
    mixture_mass,
    prefactor_bracket,
)
from .oracle import (
    EnumeratedGroup,
    build_group,
    conjugacy_classes,
    empirical_class_table,
    empirical_proportion,
    fixed_dims,
    fixed_form_counts,
    jordan_types,
    oracle_induced_weil,
    rcf_batch,
    unipotent_mask,
)
from .orders import gl_unip_centralizer, o_order
from .partitions import EMPTY, Partition, iter_partitions, iter_partitions_up_to, make_partition, odd_parts_even_mult
from .qpoly import z_minus_1
from .series import GeometricFamily, TruncatedSeries, monomial_product, partition_sum_series
from .unipotent import (
    class_labels,
    decompositions_of_type,
    induced_weil,
    jordan_lift_odd_dim,
    o_class_data,
    weil_diff_value,
)
from .weights import z_minus_1_indicator

SUITES = ("algebra", "oracle", "weil", "measures")
MEASURE_POINTS = ((Fraction(1, 4), 2), (Fraction(1, 2), 2), (Fraction(1, 2), 4))


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _check(suite: str, name: str, passed: bool, detail: str = "") -> CheckResult:
    if not passed:
        log.warn(f"{suite}/{name} failed {detail}".rstrip(), tag="verify")
    return CheckResult(suite, name, bool(passed), detail)


# --- q-series identities ------------------------------------------------------------------


def _one_minus(c: Fraction, e: int, order: int) -> TruncatedSeries:
    return TruncatedSeries.one(order) - TruncatedSeries.monomial(c, e, order)


def fixed_length_identity(q: int, length: int, order: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """Σ_{l(λ)=length} p_sum_unipotent(λ)·u^|λ| against its product form."""
    lhs = partition_sum_series(
        lambda lam: p_sum_unipotent(lam, q) if lam.l == length else 0,
        odd_parts_even_mult,
        1,
        order,
    )
    k, odd = divmod(length, 2)
    denom = TruncatedSeries.one(order)
    for i in range(1, k + 1):
        denom = denom * _one_minus(Fraction(1, q ** (2 * i - 1)), 2, order).scale(1 - Fraction(1, q ** (2 * i)))
    if odd:
        denom = denom * _one_minus(Fraction(1, q ** (2 * k + 1)), 2, order)
        head = TruncatedSeries.monomial(Fraction(1, q ** (2 * k * k + k)), 2 * k + 2, order)
    else:
        head = TruncatedSeries.monomial(Fraction(q**k, q ** (2 * k * k)), 2 * k, order)
    return lhs, head * denom.inv()


def product_collapse_identity(q: int, order: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """Sum series restricted to λ_(z-1) = ∅ against Π(1 - u²/q^{2i-1}) / (1 - u²)."""
    lhs = cycle_index_series(q, z_minus_1_indicator(EMPTY), order, "sum")
    top = monomial_product([GeometricFamily(c=Fraction(-1, q), r=Fraction(1, q * q), e=2)], order)
    return lhs, top * _one_minus(Fraction(1), 2, order).inv()


# --- algebra ------------------------------------------------------------------------------


def _spot_values() -> List[CheckResult]:
    z1 = z_minus_1(2)
    ident = RcfData.from_mapping(2, {z1: make_partition([1, 1])})
    props = class_proportions(ident, 2)
    return [
        _check("algebra", "p_plus identity dim 2", props.p_plus == Fraction(1, 2)),
        _check("algebra", "p_minus identity dim 2", props.p_minus == Fraction(1, 6)),
        _check("algebra", "p_sum (2)", p_sum_unipotent(make_partition([2]), 2) == 1),
        _check("algebra", "p_diff (2)", p_diff_unipotent(make_partition([2]), 2) == 0),
    ]


def _at_most_one_part(lam: Partition) -> bool:
    return lam.l <= 1


def cyclic_direct_sum(q: int, dim: int) -> Tuple[Fraction, Fraction]:
    """(p⁺, p⁻) summed over class data whose partitions all have at most one part."""
    plus = minus = Fraction(0)
    for dtype, multiplicity in iter_o_data_types(q, dim, part_filter=_at_most_one_part):
        pair = data_type_proportions(dtype, q)
        plus += multiplicity * pair.p_plus
        minus += multiplicity * pair.p_minus
    return plus, minus


def cyclic_direct_checks(q: int, max_dim: int) -> List[CheckResult]:
    out = []
    for dim in range(2, max_dim + 1, 2):
        plus, minus = cyclic_direct_sum(q, dim)
        out.append(
            _check(
                "algebra",
                f"cyclic gf=direct sum dim {dim} q={q}",
                plus == cyclic_proportion(1, dim, q) and minus == cyclic_proportion(-1, dim, q),
                f"{plus}, {minus}",
            )
        )
    return out


def algebra_suite(q: int, max_dim: int) -> List[CheckResult]:
    out = _spot_values()
    for dim in range(2, max_dim + 1, 2):
        for kind in ("fixed", "omega-fixed", "unipotent"):
            closed = fixed_space_table(dim, q, kind, "closed")
            series = fixed_space_table(dim, q, kind, "series")
            out.append(_check("algebra", f"{kind} closed=series dim {dim}", closed == series))
        for eps in (1, -1):
            total = sum((unip_fixed_prob(eps, dim, k, q) for k in range(dim + 1)), Fraction(0))
            out.append(
                _check("algebra", f"unipotent count eps={eps:+d} dim {dim}", total * o_order(eps, dim, q) == unip_count(eps, dim, q))
            )
            out.append(
                _check(
                    "algebra",
                    f"cyclic gf=series eps={eps:+d} dim {dim}",
                    cyclic_proportion(eps, dim, q) == cyclic_proportion_from_series(eps, dim, q),
                )
            )
    order = 24
    for length in range(0, 7):
        lhs, rhs = fixed_length_identity(q, length, order)
        out.append(_check("algebra", f"fixed-length identity l={length}", lhs == rhs))
    lhs, rhs = product_collapse_identity(q, order)
    out.append(_check("algebra", "product collapse identity", lhs == rhs))
    out.extend(cyclic_direct_checks(q, max_dim))
    return out


# --- oracle -------------------------------------------------------------------------------


def _is_unipotent_data(rcf: RcfData) -> bool:
    return all(phi.is_z_minus_1() for phi, _ in rcf.items)


def _is_cyclic_data(rcf: RcfData) -> bool:
    return all(lam.l <= 1 for _, lam in rcf.items)


def _fixed_dim(k: int) -> Callable[[RcfData], bool]:
    return lambda rcf: rcf.z_minus_1_partition.l == k


def theory_class_counts(lam: Partition, context: str) -> int:
    """Unipotent classes of Jordan type λ in Sp, O± or Ω±."""
    if context.startswith("Omega"):
        eps = 1 if context == "OmegaPlus" else -1
        if lam.l % 2:
            return 0
        total = 0
        for d in decompositions_of_type(lam):
            data = o_class_data(d, eps)
            total += data.h_class_count * data.k_splitting
        return total
    return sum(len(class_labels(d, context)) for d in decompositions_of_type(lam))


def class_count_checks(group: EnumeratedGroup, context: str) -> List[CheckResult]:
    mask = unipotent_mask(group.elements, group.q)
    classes = conjugacy_classes(group, mask)
    reps = np.array([c.representative.array for c in classes], dtype=np.uint8)
    seen = Counter(jordan_types(reps, group.q))
    name = f"{group.kind.family}_{group.dim}"
    out = []
    for lam in iter_partitions(group.dim, odd_parts_even_mult):
        expected = theory_class_counts(lam, context)
        out.append(_check("oracle", f"{name} unipotent classes {lam}", seen.get(lam, 0) == expected, f"{seen.get(lam, 0)} vs {expected}"))
    return out


def orthogonal_group_checks(dim: int, q: int, eps: int) -> List[CheckResult]:
    family = "Oplus" if eps > 0 else "Ominus"
    group = build_group(family, dim, q)
    table = empirical_class_table(group)
    name = f"{family}_{dim}({q})"
    out = []
    mismatched = [str(rcf) for rcf, p in table.items() if class_proportions(rcf, q).get(eps) != p]
    out.append(_check("oracle", f"{name} class proportions", not mismatched, ", ".join(mismatched[:3])))
    covered = sum((class_proportions(rcf, q).get(eps) for rcf in table), Fraction(0))
    out.append(_check("oracle", f"{name} predicted mass of occurring data", covered == 1))
    for k in range(dim + 1):
        seen = empirical_proportion(table, _fixed_dim(k))
        out.append(_check("oracle", f"{name} fixed space k={k}", seen == fixed_space_prob(eps, dim, k, q)))
        seen_unip = empirical_proportion(table, lambda rcf, k=k: _is_unipotent_data(rcf) and rcf.z_minus_1_partition.l == k)
        out.append(_check("oracle", f"{name} unipotent fixed space k={k}", seen_unip == unip_fixed_prob(eps, dim, k, q)))
    unip = empirical_proportion(table, _is_unipotent_data) * group.order
    out.append(_check("oracle", f"{name} unipotent count", unip == unip_count(eps, dim, q)))
    cyc = empirical_proportion(table, _is_cyclic_data)
    out.append(_check("oracle", f"{name} cyclic proportion", cyc == cyclic_proportion(eps, dim, q)))
    out.extend(class_count_checks(group, family))
    return out


def omega_group_checks(dim: int, q: int, eps: int) -> List[CheckResult]:
    family = "OmegaPlus" if eps > 0 else "OmegaMinus"
    group = build_group(family, dim, q)
    table = empirical_class_table(group)
    name = f"{family}_{dim}({q})"
    mismatched = [str(rcf) for rcf, p in table.items() if omega_class_proportion(rcf, q, eps) != p]
    out = [_check("oracle", f"{name} class proportions", not mismatched, ", ".join(mismatched[:3]))]
    for k in range(0, dim + 1, 2):
        seen = empirical_proportion(table, _fixed_dim(k))
        out.append(_check("oracle", f"{name} fixed space k={k}", seen == omega_fixed_space_prob(eps, dim, k, q)))
    if dim >= 4:
        out.extend(class_count_checks(group, family))
    return out


def odd_dimension_checks(dim: int, q: int) -> List[CheckResult]:
    group = build_group("Oodd", dim, q)
    full = rcf_batch(group.elements, q)
    quotient = rcf_batch(np.ascontiguousarray(group.elements[:, : dim - 1, : dim - 1]), q)
    lifted = [jordan_lift_odd_dim(rcf) for rcf in quotient.data]
    bad = sum(1 for i, j in zip(full.index, quotient.index) if full.data[i] != lifted[j])
    return [_check("oracle", f"Oodd_{dim}({q}) quotient lift", bad == 0, f"{bad} mismatches")]


def oracle_suite(q: int, max_dim: int) -> List[CheckResult]:
    out: List[CheckResult] = []
    for dim in range(2, max_dim + 1, 2):
        for eps in (1, -1):
            out.extend(orthogonal_group_checks(dim, q, eps))
            out.extend(omega_group_checks(dim, q, eps))
        if dim >= 4:
            out.extend(class_count_checks(build_group("Sp", dim, q), "Sp"))
    for dim in range(3, max_dim, 2):
        out.extend(odd_dimension_checks(dim, q))
    return out


# --- Weil difference ----------------------------------------------------------------------


def weil_values_by_type(group: EnumeratedGroup) -> Dict[Partition, List[int]]:
    """Sorted form differences of unipotent class representatives, per Jordan type."""
    mask = unipotent_mask(group.elements, group.q)
    classes = conjugacy_classes(group, mask)
    reps = np.array([c.representative.array for c in classes], dtype=np.uint8)
    plus, minus = fixed_form_counts(reps, group.q)
    out: Dict[Partition, List[int]] = {}
    for lam, p, m in zip(jordan_types(reps, group.q), plus, minus):
        out.setdefault(lam, []).append(int(p) - int(m))
    return {lam: sorted(v) for lam, v in out.items()}


def theory_weil_values(lam: Partition, q: int) -> List[int]:
    return sorted(weil_diff_value(label, q) for d in decompositions_of_type(lam) for label in class_labels(d, "Sp"))


def symplectic_weil_checks(dim: int, q: int) -> List[CheckResult]:
    group = build_group("Sp", dim, q)
    name = f"Sp_{dim}({q})"
    plus, minus = fixed_form_counts(group.elements, q)
    totals_ok = np.array_equal(plus + minus, q ** fixed_dims(group.elements, q))
    out = [_check("weil", f"{name} invariant form totals", bool(totals_ok))]
    for lam, values in sorted(weil_values_by_type(group).items()):
        expected = theory_weil_values(lam, q)
        out.append(_check("weil", f"{name} differences {lam}", values == expected, f"{values} vs {expected}"))
    for lam in iter_partitions(dim, odd_parts_even_mult):
        out.append(_check("weil", f"{name} induced value {lam}", oracle_induced_weil(group, lam) == induced_weil(lam, q)))
    return out


def induced_weil_checks(max_size: int, fields: Sequence[int] = (2, 4)) -> List[CheckResult]:
    out = []
    for q in fields:
        bad = []
        negative = []
        for lam in iter_partitions_up_to(max_size):
            if lam.size % 2:
                continue
            value = induced_weil(lam, q)
            if value < 0:
                negative.append(str(lam))
            if p_diff_unipotent(lam, q) != value / gl_unip_centralizer(lam, q):
                bad.append(str(lam))
        out.append(_check("weil", f"p_diff = induced/centralizer q={q}", not bad, ", ".join(bad[:3])))
        out.append(_check("weil", f"induced values nonnegative q={q}", not negative, ", ".join(negative[:3])))
    return out


def weil_suite(q: int, max_dim: int) -> List[CheckResult]:
    out: List[CheckResult] = []
    for dim in range(2, min(max_dim, 6) + 1, 2):
        out.extend(symplectic_weil_checks(dim, q))
    out.extend(induced_weil_checks(16))
    return out


# --- measures -----------------------------------------------------------------------------


def kernel_row_sums(params: MeasureParams, max_a: int) -> List[CheckResult]:
    out = []
    for a in range(max_a + 1):
        row1 = sum((k1(a, b, params) for b in range(a + 1)), Fraction(0))
        row2 = sum((k2(a, b, params) for b in range(a + 1)), Fraction(0))
        out.append(_check("measures", f"K rows a={a} u={params.u} q={params.q}", row1 == 1 and row2 == 1))
    return out


def mixture_checks(params: MeasureParams, max_size: int) -> List[CheckResult]:
    out = []
    lo, hi = prefactor_bracket(params)
    for variant in ("R", "Re", "Ro"):
        bad = []
        for lam in iter_partitions_up_to(max_size, odd_parts_even_mult):
            exact_hi = mass(lam, params, variant)
            exact_lo = exact_hi * lo / hi
            mix = mixture_mass(lam, params, variant)
            if mix.partial > exact_hi or mix.partial + mix.tail < exact_lo:
                bad.append(str(lam))
        out.append(_check("measures", f"{variant} mixture u={params.u} q={params.q}", not bad, ", ".join(bad[:3])))
    return out


LIMIT_PARTITIONS = ((), (1, 1), (2,), (2, 2), (3, 3), (2, 1, 1))


def limit_checks(q: int, lam: Partition, dims: Sequence[int]) -> List[CheckResult]:
    """Finite-group masses of λ approach the u = 1 measures as the dimension grows.

    Gaps are taken against the upper end of the prefactor bracket, so the
    bracket width is allowed as slack.
    """
    params = MeasureParams(Fraction(1), q)
    lo, hi = prefactor_bracket(params)
    out = []
    for variant in VARIANTS:
        limit = mass(lam, params, variant)
        slack = limit - limit * lo / hi
        values = finite_group_masses(lam, q, dims, variant)
        gaps = [abs(v - limit) for v in values]
        bounded = all(g <= limit_error_bound(lam, q, d, variant) + slack for d, g in zip(dims, gaps))
        settled = [g for d, g in zip(dims, gaps) if d >= lam.size]
        shrinking = all(b <= a + slack for a, b in zip(settled, settled[1:]))
        out.append(
            _check(
                "measures",
                f"{variant} limit λ={lam} q={q}",
                bounded and shrinking,
                f"gap at dim {dims[-1]}: {float(gaps[-1]):.3g}",
            )
        )
    return out


def measures_suite(q: int, max_dim: int, samples: int = 1_000_000, seed: int = 7) -> List[CheckResult]:
    out: List[CheckResult] = []
    for u, field_q in MEASURE_POINTS:
        params = MeasureParams(u, field_q, truncation=40)
        for variant in ("R", "Re", "Ro"):
            try:
                mass_bracket(params, variant)
                out.append(_check("measures", f"{variant} normalization u={u} q={field_q}", True))
            except Exception as exc:  # noqa: BLE001 - reported as a failed check
                out.append(_check("measures", f"{variant} normalization u={u} q={field_q}", False, str(exc)))
        out.extend(kernel_row_sums(params, 12))
        out.extend(mixture_checks(params, 6))
    dims = tuple(range(2, max(max_dim, 12) + 1, 2))
    for parts in LIMIT_PARTITIONS:
        out.extend(limit_checks(q, make_partition(parts), dims))
    report = empirical_tv(MeasureParams(Fraction(1, 2), 2), "R", samples, seed)
    out.append(_check("measures", f"sampler TV n={samples}", report.tv_distance < 0.005, f"{report.tv_distance:.5f}"))
    return out


def run_suite(name: str, q: int = 2, max_dim: int = 6, samples: int = 1_000_000) -> List[CheckResult]:
    if name == "all":
        return [r for suite in SUITES for r in run_suite(suite, q, max_dim, samples)]
    if name == "algebra":
        return algebra_suite(q, max_dim)
    if name == "oracle":
        return oracle_suite(q, max_dim)
    if name == "weil":
        return weil_suite(q, max_dim)
    if name == "measures":
        return measures_suite(q, max_dim, samples)
    raise InputError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
