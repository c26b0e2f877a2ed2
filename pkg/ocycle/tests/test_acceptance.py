"""End-to-end checks tying closed forms, series, class data, the enumerated groups and the measures together; the heavy ones are marked slow."""

from fractions import Fraction

import pytest

from ocycle.cycleindex import class_proportions, iter_o_data
from ocycle.enumerative import cyclic_proportion, fixed_space_table, omega_fixed_space_prob
from ocycle.measures import MeasureParams, mass_bracket
from ocycle.oracle import build_group
from ocycle.verify import (
    MEASURE_POINTS,
    algebra_suite,
    class_count_checks,
    cyclic_direct_checks,
    cyclic_direct_sum,
    fixed_length_identity,
    induced_weil_checks,
    kernel_row_sums,
    measures_suite,
    mixture_checks,
    odd_dimension_checks,
    omega_group_checks,
    orthogonal_group_checks,
    product_collapse_identity,
    symplectic_weil_checks,
)


def failures(results):
    return [f"{r.name}: {r.detail}" for r in results if not r.passed]


@pytest.mark.parametrize("dim", [2, 4])
@pytest.mark.parametrize("eps", [1, -1])
def test_oracle_equivalence(dim, eps):
    assert failures(orthogonal_group_checks(dim, 2, eps)) == []
    assert failures(omega_group_checks(dim, 2, eps)) == []


@pytest.mark.slow
@pytest.mark.parametrize("eps", [1, -1])
def test_oracle_equivalence_dim_six(eps):
    assert failures(orthogonal_group_checks(6, 2, eps)) == []
    assert failures(omega_group_checks(6, 2, eps)) == []


def test_spot_values_and_small_tables():
    assert failures(algebra_suite(2, 4)) == []
    assert omega_fixed_space_prob(-1, 4, 0, 2) == Fraction(2, 5)
    assert omega_fixed_space_prob(-1, 4, 2, 2) == Fraction(7, 12)
    assert omega_fixed_space_prob(-1, 4, 4, 2) == Fraction(1, 60)


@pytest.mark.slow
@pytest.mark.parametrize("q", [2, 4, 8])
def test_closed_forms_against_series_to_dim_twelve(q):
    for dim in range(2, 13, 2):
        for kind in ("fixed", "omega-fixed", "unipotent"):
            assert fixed_space_table(dim, q, kind, "closed") == fixed_space_table(dim, q, kind, "series")


@pytest.mark.parametrize("q", [2, 4])
def test_cyclic_proportions_against_short_partition_class_data(q):
    assert failures(cyclic_direct_checks(q, 10)) == []


def test_cyclic_proportions_against_explicit_short_partition_data():
    q = 2
    assert cyclic_direct_sum(q, 2) == (Fraction(1, 2), Fraction(5, 6))
    for dim in range(2, 11, 2):
        direct = {1: Fraction(0), -1: Fraction(0)}
        for rcf in iter_o_data(q, dim, part_filter=lambda lam: lam.l <= 1):
            pair = class_proportions(rcf, q)
            direct[1] += pair.p_plus
            direct[-1] += pair.p_minus
        assert direct[1] == cyclic_proportion(1, dim, q)
        assert direct[-1] == cyclic_proportion(-1, dim, q)


@pytest.mark.parametrize("context,kind,dim", [("Sp", "Sp", 4), ("Oplus", "O+", 4), ("Ominus", "O-", 4)])
def test_unipotent_class_bookkeeping(context, kind, dim):
    assert failures(class_count_checks(build_group(kind, dim, 2), context)) == []


@pytest.mark.slow
@pytest.mark.parametrize("context,kind", [("Sp", "Sp"), ("Oplus", "O+"), ("Ominus", "O-")])
def test_unipotent_class_bookkeeping_dim_six(context, kind):
    assert failures(class_count_checks(build_group(kind, 6, 2), context)) == []


def test_weil_character_suite():
    assert failures(symplectic_weil_checks(4, 2)) == []
    assert failures(induced_weil_checks(16)) == []


@pytest.mark.slow
def test_weil_character_suite_sp6():
    assert failures(symplectic_weil_checks(6, 2)) == []


@pytest.mark.parametrize("q", [2, 4])
def test_q_series_identities(q):
    for length in range(0, 7):
        lhs, rhs = fixed_length_identity(q, length, 30)
        assert lhs == rhs
    lhs, rhs = product_collapse_identity(q, 30)
    assert lhs == rhs


def test_measure_identities():
    for u, q in MEASURE_POINTS:
        params = MeasureParams(u, q)
        assert failures(kernel_row_sums(params, 12)) == []
        assert failures(mixture_checks(params, 6)) == []
        assert mass_bracket(params, "R", truncation=24).contains(Fraction(1))


@pytest.mark.slow
def test_measure_suite_full():
    assert failures(measures_suite(2, 6)) == []


@pytest.mark.parametrize("dim", [3, 5])
def test_odd_dimension_lift(dim):
    assert failures(odd_dimension_checks(dim, 2)) == []
