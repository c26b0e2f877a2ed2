from fractions import Fraction

import pytest

from ocycle.errors import InputError, InvalidParameters
from ocycle.measures import (
    MeasureParams,
    column_marginal,
    empirical_tv,
    empty_mass,
    finite_group_masses,
    initial_column_dist,
    initial_mass,
    k1,
    k2,
    limit_error_bound,
    mass,
    mass_bracket,
    pprime_o,
    pprime_sp,
    prefactor,
    prefactor_bracket,
    r_mass,
    re_mass,
    ro_mass,
    sample,
    sample_many,
)
from ocycle.partitions import EMPTY, make_partition, odd_parts_even_mult
from ocycle.verify import LIMIT_PARTITIONS, MEASURE_POINTS, kernel_row_sums, limit_checks, mixture_checks

HALF = MeasureParams(Fraction(1, 2), 2)


def test_parameter_domain():
    with pytest.raises(InvalidParameters):
        MeasureParams(Fraction(0), 2)
    with pytest.raises(InvalidParameters):
        MeasureParams(Fraction(3, 2), 2)
    assert MeasureParams(Fraction(3, 2), 4).u2 == Fraction(9, 4)
    with pytest.raises(InputError):
        initial_column_dist(HALF, "Rx")


def test_point_masses():
    u2, q = HALF.u2, HALF.q
    assert empty_mass(HALF) == prefactor(HALF) / (1 + u2)
    assert r_mass(make_partition([3]), HALF) == 0
    assert r_mass(make_partition([1, 1]), HALF) == empty_mass(HALF) * q * u2 / (q * q - 1)
    assert re_mass(make_partition([2]), HALF) == 0
    assert ro_mass(make_partition([1, 1]), HALF) == 0
    assert ro_mass(make_partition([2]), HALF) > 0


def test_prefactor_bracket_is_tight():
    lo, hi = prefactor_bracket(HALF)
    assert 0 < lo < hi == prefactor(HALF)
    assert hi - lo < Fraction(1, 10**40)


def test_column_law_inputs():
    u, q = HALF.u, HALF.q
    assert pprime_sp(0, HALF) == pprime_o(0, HALF) == 1
    assert pprime_o(2, HALF) == u**2 / (q * (1 - u**2 / q) * (1 - Fraction(1, q * q)))
    assert pprime_sp(1, HALF) == u**2 / (q * (1 - u**2 / q))
    with pytest.raises(InputError):
        pprime_o(-1, HALF)


def test_kernels():
    assert k1(0, 0, HALF) == 1 and k2(0, 0, HALF) == 1
    assert k1(3, 2, HALF) == 0
    assert k2(2, 3, HALF) == 0
    for u, q in MEASURE_POINTS:
        assert all(r.passed for r in kernel_row_sums(MeasureParams(u, q), 12))


@pytest.mark.parametrize("variant", ["R", "Re", "Ro"])
@pytest.mark.parametrize("u,q", MEASURE_POINTS)
def test_normalization_brackets(variant, u, q):
    bracket = mass_bracket(MeasureParams(u, q), variant, truncation=24)
    assert bracket.contains(Fraction(1))
    assert bracket.tail < Fraction(1, 1000)


@pytest.mark.slow
@pytest.mark.parametrize("u,q", MEASURE_POINTS)
def test_normalization_brackets_full_truncation(u, q):
    bracket = mass_bracket(MeasureParams(u, q, truncation=40), "R")
    assert bracket.lower <= 1 <= bracket.partial + bracket.tail


def test_initial_column_law():
    dist = initial_column_dist(HALF, "Re")
    assert all(dist.mass(a) == 0 for a in range(1, 20, 2))
    odd = initial_column_dist(HALF, "Ro")
    assert all(odd.mass(a) == 0 for a in range(0, 20, 2))
    bracket = initial_column_dist(HALF, "R").bracket(40)
    assert 1 - Fraction(1, 10**9) <= bracket.partial <= 1
    tiny = MeasureParams(Fraction(1, 10**6), 2)
    assert initial_mass(0, tiny) > 1 - Fraction(1, 10**11)


def test_column_marginals_match_partition_masses():
    for a in range(0, 7):
        assert column_marginal(a, HALF, 24).contains(initial_mass(a, HALF))


def test_mixture_identities():
    assert all(r.passed for r in mixture_checks(HALF, 6))


def test_sampling_is_deterministic():
    assert sample(HALF, "R", seed=7) == sample(HALF, "R", seed=7)
    assert sample_many(HALF, "R", 11, 50) == sample_many(HALF, "R", 11, 50)


def test_sample_supports():
    for lam in sample_many(HALF, "R", 1, 300):
        assert odd_parts_even_mult(lam)
    assert all(lam.l % 2 == 0 for lam in sample_many(HALF, "Re", 2, 300))
    assert all(lam.l % 2 == 1 for lam in sample_many(HALF, "Ro", 3, 300))


def test_tiny_u_samples_the_empty_partition():
    tiny = MeasureParams(Fraction(1, 1000), 2)
    assert sample_many(tiny, "R", 5, 50) == [EMPTY] * 50


def test_empirical_distance_small_run():
    report = empirical_tv(HALF, "R", 20_000, seed=3)
    assert report.n_samples == 20_000
    assert report.tv_distance < 0.05


@pytest.mark.slow
def test_empirical_distance_million_samples():
    assert empirical_tv(HALF, "R", 1_000_000, seed=7).tv_distance < 0.005


@pytest.mark.parametrize("u, q", [(Fraction(1, 2), 2), (Fraction(7, 5), 2), (Fraction(19, 10), 4), (Fraction(1, 10), 2)])
def test_first_column_tail_bounds_use_their_own_scale(u, q):
    params = MeasureParams(u, q)
    even, odd = initial_column_dist(params, "Re"), initial_column_dist(params, "Ro")
    for k in range(10):
        assert odd.tail_bound(k) == even.tail_bound(k) / params.u2
        for variant in ("R", "Re", "Ro"):
            dist = initial_column_dist(params, variant)
            assert 1 - dist.partial_sum(k) <= dist.tail_bound(k)


def test_small_orthogonal_groups_have_exact_finite_masses():
    # O+_2(2) = {1, swap}, O-_2(2) = S_3; only the order-3 elements fix no vector
    assert finite_group_masses(EMPTY, 2, [2], "R") == [Fraction(1, 6)]
    assert finite_group_masses(EMPTY, 2, [2], "Re") == [Fraction(1, 3)]
    assert finite_group_masses(EMPTY, 2, [2], "Ro") == [Fraction(0)]
    # every coset element in dimension 2 is a transvection
    assert finite_group_masses(make_partition([2]), 2, [2], "Ro") == [Fraction(1)]
    with pytest.raises(InputError):
        finite_group_masses(EMPTY, 2, [3], "R")


@pytest.mark.parametrize("q", [2, 4])
@pytest.mark.parametrize("parts", LIMIT_PARTITIONS)
def test_finite_masses_converge_to_the_u_one_measures(q, parts):
    results = limit_checks(q, make_partition(parts), tuple(range(2, 17, 2)))
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]


def test_limit_error_shrinks_with_dimension():
    lam = make_partition([1, 1])
    limit = mass(lam, MeasureParams(Fraction(1), 2), "Re")
    bounds = [limit_error_bound(lam, 2, d, "Re") for d in (2, 4, 6, 8)]
    assert bounds == sorted(bounds, reverse=True)
    assert bounds[-1] < limit / 1000
    (value,) = finite_group_masses(lam, 2, [20], "Re")
    assert abs(value - limit) <= limit_error_bound(lam, 2, 20, "Re") + limit / 10**40
