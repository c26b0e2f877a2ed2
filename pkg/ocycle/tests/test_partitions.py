import pytest
from hypothesis import given
from hypothesis import strategies as st

from ocycle.errors import InputError, NonPositivePart
from ocycle.partitions import (
    EMPTY,
    all_mults_even,
    even_length,
    from_columns,
    iter_partitions,
    iter_partitions_up_to,
    make_partition,
    odd_parts_even_mult,
    parse_partition,
    stats,
)

parts_lists = st.lists(st.integers(min_value=1, max_value=9), max_size=8)


def test_make_partition_sorts_parts():
    assert make_partition([1, 4, 5, 4]).parts == (5, 4, 4, 1)
    assert make_partition([]) == EMPTY


def test_make_partition_rejects_zero():
    with pytest.raises(NonPositivePart):
        make_partition([1, 0])


def test_stats_of_worked_example():
    s = stats(make_partition([5, 4, 4, 1]))
    assert (s.size, s.n, s.l, s.o) == (14, 15, 4, 2)
    assert s.conjugate.parts == (4, 3, 3, 3, 1)


def test_stats_small_cases():
    assert (EMPTY.n, EMPTY.l, EMPTY.o) == (0, 0, 0)
    lam = make_partition([2, 2])
    assert (lam.n, lam.l, lam.o) == (2, 2, 0)
    assert lam.conjugate == lam


def test_iter_partitions_order_and_filters():
    assert [p.parts for p in iter_partitions(2)] == [(2,), (1, 1)]
    assert {p.parts for p in iter_partitions(4, odd_parts_even_mult)} == {(4,), (2, 2), (2, 1, 1), (1, 1, 1, 1)}
    assert {p.parts for p in iter_partitions(4, all_mults_even)} == {(2, 2), (1, 1, 1, 1)}


def test_predicates():
    assert odd_parts_even_mult(make_partition([2, 1, 1]))
    assert not odd_parts_even_mult(make_partition([3, 1]))
    assert all_mults_even(make_partition([2, 2]))
    assert not all_mults_even(make_partition([2]))
    assert even_length(make_partition([3, 1])) and even_length(EMPTY)
    assert not even_length(make_partition([2, 1, 1]))


def test_partition_counts():
    assert [sum(1 for _ in iter_partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert sum(1 for _ in iter_partitions_up_to(4)) == 12


def test_parse_partition():
    assert parse_partition("[5,4,4,1]") == make_partition([5, 4, 4, 1])
    assert parse_partition("[]") == EMPTY
    assert str(make_partition([4, 1, 5, 4])) == "[5,4,4,1]"
    with pytest.raises(InputError):
        parse_partition("[a,b]")


def test_conjugate_is_an_involution_exhaustively():
    for lam in iter_partitions_up_to(18):
        assert lam.conjugate.conjugate == lam
        assert from_columns(lam.conjugate.parts) == lam


def test_column_square_identity_exhaustively():
    for lam in iter_partitions_up_to(18):
        lhs = sum(c * c for c in lam.conjugate.parts)
        rhs = 0
        for j, mj in lam.multiplicities.items():
            rhs += (j * mj + 2 * sum(i * lam.m(i) for i in lam.multiplicities if i < j)) * mj
        assert lhs == rhs


def test_column_parity_reformulation_exhaustively():
    for lam in iter_partitions_up_to(18):
        pairs = all(lam.column(2 * i - 1) % 2 == lam.column(2 * i) % 2 for i in range(1, lam.column(1) + 1))
        assert odd_parts_even_mult(lam) == pairs


@given(parts_lists)
def test_n_matches_weighted_parts(parts):
    lam = make_partition(parts)
    # n(λ) = Σ (i-1) λ_i
    assert lam.n == sum(i * p for i, p in enumerate(lam.parts))
    assert lam.conjugate.size == lam.size
    assert lam.conjugate.conjugate == lam
