from fractions import Fraction

import pytest

from ocycle.enumerative import (
    cyclic_gf,
    cyclic_proportion,
    cyclic_proportion_from_series,
    fixed_space_prob,
    fixed_space_table,
    omega_fixed_space_prob,
    omega_fixed_space_table,
    semisimple_proportion,
    separable_proportion,
    unip_count,
    unip_fixed_prob,
    unip_fixed_table,
)
from ocycle.errors import BadDimension, InputError, UnsupportedField
from ocycle.orders import o_order


def test_fixed_space_small_cases():
    assert fixed_space_prob(1, 2, 2, 2) == Fraction(1, 2)
    assert fixed_space_prob(-1, 2, 2, 2) == Fraction(1, 6)
    assert fixed_space_prob(1, 2, 1, 2) == fixed_space_prob(-1, 2, 1, 2) == Fraction(1, 2)
    assert fixed_space_prob(-1, 2, 0, 2) == Fraction(1, 3)
    assert fixed_space_prob(1, 2, 0, 2) == 0


def test_omega_fixed_space_in_a5():
    assert omega_fixed_space_prob(-1, 4, 0, 2) == Fraction(2, 5)
    assert omega_fixed_space_prob(-1, 4, 2, 2) == Fraction(7, 12)
    assert omega_fixed_space_prob(-1, 4, 4, 2) == Fraction(1, 60)
    assert all(omega_fixed_space_prob(-1, 4, k, 2) == 0 for k in (1, 3))


def test_unipotent_counts():
    assert unip_count(1, 2, 2) == 2
    assert unip_count(-1, 2, 2) == 4
    assert unip_fixed_prob(1, 2, 2, 2) == Fraction(1, 2)
    assert unip_fixed_prob(-1, 2, 2, 2) == Fraction(1, 6)
    assert unip_fixed_prob(1, 2, 1, 2) == unip_fixed_prob(-1, 2, 1, 2) == Fraction(1, 2)


def test_cyclic_small_cases():
    assert cyclic_proportion(1, 2, 2) == Fraction(1, 2)
    assert cyclic_proportion(-1, 2, 2) == Fraction(5, 6)
    gf = cyclic_gf(2, 6)
    assert gf.plus().coeff(0) == 1 and gf.minus().coeff(0) == 0


def test_domain_errors():
    with pytest.raises(BadDimension):
        fixed_space_prob(1, 3, 1, 2)
    with pytest.raises(UnsupportedField):
        fixed_space_prob(1, 4, 0, 3)
    with pytest.raises(InputError):
        fixed_space_table(4, 2, kind="spin")
    assert fixed_space_prob(1, 4, 5, 2) == 0


@pytest.mark.parametrize("q", [2, 4])
@pytest.mark.parametrize("dim", [2, 4, 6, 8, 10, 12])
def test_column_sums(q, dim):
    assert fixed_space_table(dim, q).column_sums() == (1, 1)
    assert omega_fixed_space_table(dim, q).column_sums() == (1, 1)
    plus, minus = unip_fixed_table(dim, q).column_sums()
    assert plus * o_order(1, dim, q) == unip_count(1, dim, q)
    assert minus * o_order(-1, dim, q) == unip_count(-1, dim, q)


@pytest.mark.parametrize("kind", ["fixed", "omega-fixed", "unipotent", "omega-unipotent"])
@pytest.mark.parametrize("q,dim", [(2, 2), (2, 4), (2, 6), (2, 8), (4, 4), (4, 6), (8, 4)])
def test_closed_forms_match_series(kind, q, dim):
    closed = fixed_space_table(dim, q, kind, "closed")
    series = fixed_space_table(dim, q, kind, "series")
    assert closed.rows == series.rows


@pytest.mark.slow
@pytest.mark.parametrize("q,dim", [(2, 10), (2, 12), (4, 10), (4, 12), (8, 8)])
def test_closed_forms_match_series_larger(q, dim):
    assert fixed_space_table(dim, q, "fixed", "closed").rows == fixed_space_table(dim, q, "fixed", "series").rows


def test_omega_is_twice_the_restricted_o_side():
    # elements with an even-dimensional fixed space all lie in Ω
    for q in (2, 4):
        for dim in (2, 4, 6, 8):
            for k in range(0, dim + 1, 2):
                for eps in (1, -1):
                    assert omega_fixed_space_prob(eps, dim, k, q) == 2 * fixed_space_prob(eps, dim, k, q)


@pytest.mark.parametrize("q", [2, 4])
def test_cyclic_gf_matches_series(q):
    gf = cyclic_gf(q, 5)
    for n in range(1, 6):
        plus, minus = gf.plus().coeff(n), gf.minus().coeff(n)
        assert 0 <= plus <= 1 and 0 <= minus <= 1
        assert plus == cyclic_proportion_from_series(1, 2 * n, q)
        assert minus == cyclic_proportion_from_series(-1, 2 * n, q)


def test_separable_and_semisimple_plugins():
    # O⁻_2(2) ≅ S3: the three involutions are unipotent of type (2), not separable
    assert separable_proportion(-1, 2, 2) == Fraction(1, 3)
    assert semisimple_proportion(-1, 2, 2) == Fraction(1, 2)
    assert separable_proportion(1, 2, 2) == 0
    assert semisimple_proportion(1, 2, 2) == Fraction(1, 2)
