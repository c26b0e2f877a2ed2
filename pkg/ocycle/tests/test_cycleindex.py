from fractions import Fraction

import pytest

from ocycle.cycleindex import (
    RcfData,
    class_proportions,
    cycle_index_series,
    data_type_proportions,
    iter_o_data,
    iter_o_data_types,
    omega_class_proportion,
    p_diff_unipotent,
    p_sum_unipotent,
    proportions_from_series,
    validate_o_data,
)
from ocycle.errors import InvalidData, UnsupportedField
from ocycle.orders import gl_unip_centralizer
from ocycle.partitions import EMPTY, all_mults_even, iter_partitions, iter_partitions_up_to, make_partition
from ocycle.qpoly import parse_poly
from ocycle.weights import cyclic_weight, unipotent_fixed_space_weight, unipotent_weight


def data(factors, q=2):
    return RcfData.from_mapping(q, {parse_poly(p, q): make_partition(parts) for p, parts in factors.items()})


def test_validation():
    assert validate_o_data(data({"z+1": [2]}), 2)
    assert not validate_o_data(data({"z+1": [3, 1]}), 4)
    assert not validate_o_data(data({"z^3+z+1": [1]}), 6)
    assert validate_o_data(data({"z^3+z+1": [1], "z^3+z^2+1": [1]}), 6)
    assert not validate_o_data(data({"z+1": [2]}), 4)
    assert not validate_o_data(data({"z": [1], "z+1": [1, 1]}))


def test_unipotent_weights():
    assert p_sum_unipotent(make_partition([2]), 2) == 1
    assert p_diff_unipotent(make_partition([2]), 2) == 0
    assert p_sum_unipotent(make_partition([1, 1]), 2) == Fraction(2, 3)
    assert p_diff_unipotent(make_partition([1, 1]), 2) == Fraction(1, 3)
    assert p_sum_unipotent(make_partition([3, 1]), 2) == 0
    assert p_sum_unipotent(EMPTY, 2) == p_diff_unipotent(EMPTY, 2) == 1


@pytest.mark.parametrize("q", [2, 4])
def test_diff_weight_is_a_unipotent_proportion_of_gl_over_q_squared(q):
    for lam in iter_partitions_up_to(12, all_mults_even):
        if not lam:
            continue
        half = make_partition([i for i, m in lam.multiplicities.items() for _ in range(m // 2)])
        assert p_diff_unipotent(lam, q) == Fraction(1, gl_unip_centralizer(half, q * q))


def test_diff_weight_nonnegative_on_unipotent_types():
    for lam in iter_partitions_up_to(16):
        assert p_diff_unipotent(lam, 2) >= 0


def test_class_proportion_examples():
    pair = class_proportions(data({"z^2+z+1": [1]}), 2)
    assert (pair.p_plus, pair.p_minus) == (0, Fraction(1, 3))
    pair = class_proportions(data({"z+1": [1, 1]}), 2)
    assert (pair.p_plus, pair.p_minus) == (Fraction(1, 2), Fraction(1, 6))
    pair = class_proportions(RcfData.from_mapping(2, {}), 2)
    assert (pair.p_plus, pair.p_minus) == (1, 1)


def test_invalid_data_is_rejected():
    with pytest.raises(InvalidData):
        class_proportions(data({"z+1": [3, 1]}), 2)
    with pytest.raises(InvalidData):
        class_proportions(data({"z^3+z+1": [1]}), 2)
    with pytest.raises(UnsupportedField):
        class_proportions(RcfData.from_mapping(3, {}), 3)


def test_omega_proportions():
    assert omega_class_proportion(data({"z+1": [1, 1]}), 2, -1) == Fraction(1, 3)
    assert omega_class_proportion(data({"z+1": [2]}), 2, 1) == 0
    assert omega_class_proportion(data({"z^2+z+1": [1]}), 2, -1) == Fraction(2, 3)


@pytest.mark.parametrize("dim", [2, 4, 6])
def test_total_mass_over_explicit_data(dim):
    p_plus = p_minus = Fraction(0)
    for rcf in iter_o_data(2, dim):
        pair = class_proportions(rcf, 2)
        assert 0 <= pair.p_plus <= 1 and 0 <= pair.p_minus <= 1
        p_plus += pair.p_plus
        p_minus += pair.p_minus
    assert (p_plus, p_minus) == (1, 1)


@pytest.mark.parametrize("q,dim", [(2, 8), (4, 2), (4, 4), (4, 6), (4, 8)])
def test_total_mass_over_data_types(q, dim):
    p_plus = p_minus = Fraction(0)
    for dtype, mult in iter_o_data_types(q, dim):
        pair = data_type_proportions(dtype, q)
        p_plus += mult * pair.p_plus
        p_minus += mult * pair.p_minus
    assert (p_plus, p_minus) == (1, 1)


@pytest.mark.parametrize("q", [2, 4])
def test_unit_weight_series(q):
    order = 10
    total = cycle_index_series(q, None, order, "sum")
    gap = cycle_index_series(q, None, order, "diff")
    for n in range(1, order // 2 + 1):
        assert total.coeff(2 * n) == 2
        assert gap.coeff(2 * n) == 0
    assert total.coeff(0) == gap.coeff(0) == 1


def test_counting_and_enumerating_modes_agree():
    for variant in ("sum", "diff", "omega-sum"):
        counted = cycle_index_series(2, cyclic_weight, 8, variant, mode="count")
        walked = cycle_index_series(2, cyclic_weight, 8, variant, mode="enumerate")
        assert counted == walked


def test_series_matches_class_sums():
    for dim in (2, 4, 6):
        expected_plus = expected_minus = Fraction(0)
        for rcf in iter_o_data(2, dim):
            if all(phi.is_z_minus_1() for phi, _ in rcf.items):
                pair = class_proportions(rcf, 2)
                expected_plus += pair.p_plus
                expected_minus += pair.p_minus
        pair = proportions_from_series(2, unipotent_weight, dim)
        assert (pair.p_plus, pair.p_minus) == (expected_plus, expected_minus)


def test_fixed_length_unipotent_sums_match_series():
    for k in range(0, 5):
        target = sum((p_sum_unipotent(lam, 2) for lam in iter_partitions(8) if lam.l == k), Fraction(0))
        weight = unipotent_fixed_space_weight(k)
        assert cycle_index_series(2, weight, 8, "sum").coeff(8) == target
