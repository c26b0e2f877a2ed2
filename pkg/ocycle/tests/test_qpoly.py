import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ocycle.errors import UnsupportedField, ZeroConstantTerm
from ocycle.qpoly import (
    PolyOverFq,
    check_orthogonal_q,
    conjugate_pairs,
    divisors,
    get_field,
    irreducibles,
    is_irreducible,
    m_star,
    m_star_count,
    mobius,
    n_star,
    n_star_count,
    necklace_count,
    parse_poly,
    self_conjugate_irreducibles,
    star,
    to_galois,
)


def names(polys):
    return {str(p) for p in polys}


def test_irreducibles_over_f2():
    assert names(irreducibles(2, 1)) == {"z", "z+1"}
    assert names(irreducibles(2, 2)) == {"z^2+z+1"}
    assert names(irreducibles(2, 3)) == {"z^3+z+1", "z^3+z^2+1"}


def test_irreducibles_pass_trial_division():
    for q in (2, 4):
        for d in range(1, 6):
            assert all(is_irreducible(phi) for phi in irreducibles(q, d))


def test_unsupported_field():
    with pytest.raises(UnsupportedField):
        get_field(6)
    with pytest.raises(UnsupportedField):
        check_orthogonal_q(3)


def test_field_axioms_exhaustively():
    for q in (2, 4, 8, 16):
        f = get_field(q)
        for a in range(1, q):
            assert f.mul(a, f.inv(a)) == 1
            assert f.add(a, a) == 0
            assert f.mul(f.sqrt(a), f.sqrt(a)) == a
        for a in range(q):
            for b in range(q):
                assert f.mul(a, b) == f.mul(b, a)
                assert f.add(a, b) == f.add(b, a)


def test_star_examples():
    assert str(star(parse_poly("z+1", 2))) == "z+1"
    assert str(star(parse_poly("z^2+z+1", 2))) == "z^2+z+1"
    assert str(star(parse_poly("z^3+z+1", 2))) == "z^3+z^2+1"
    with pytest.raises(ZeroConstantTerm):
        star(parse_poly("z", 2))


@given(st.sampled_from([2, 4]), st.integers(min_value=1, max_value=6), st.data())
def test_star_is_an_involution(q, d, data):
    phi = data.draw(st.sampled_from(irreducibles(q, d)))
    if phi.is_z():
        return
    assert star(star(phi)) == phi
    assert star(phi).degree == phi.degree


def test_star_counts_over_f2():
    assert n_star(2, 2) == 1
    assert m_star(2, 3) == 1
    assert n_star(2, 4) == 1 and m_star(2, 4) == 1
    assert names(self_conjugate_irreducibles(2, 4)) == {"z^4+z^3+z^2+z+1"}
    assert [tuple(map(str, pair)) for pair in conjugate_pairs(2, 4)] == [("z^4+z+1", "z^4+z^3+1")]


def test_necklace_identity():
    for q in (2, 4):
        for D in range(1, 13):
            assert sum(d * necklace_count(q, d) for d in divisors(D)) == q**D
        for d in range(1, 7):
            assert necklace_count(q, d) == len(irreducibles(q, d))


def test_self_conjugate_degrees_are_even():
    for q, top in ((2, 9), (4, 7)):
        for d in range(3, top, 2):
            assert n_star(q, d) == 0


def test_closed_counts_match_enumeration():
    for q in (2, 4):
        for d in range(1, 9 if q == 2 else 6):
            assert n_star_count(q, d) == n_star(q, d)
            assert m_star_count(q, d) == m_star(q, d)
            assert n_star_count(q, d, include_z_minus_1=False) == n_star(q, d, include_z_minus_1=False)


def test_mobius():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_trial_division_rejects_squares_and_agrees_with_galois():
    for text, q in (("z^2+1", 2), ("z^4+z^2+1", 2), ("z^2+1", 4), ("z^3+z^2+z+1", 2)):
        assert not is_irreducible(parse_poly(text, q))
    for d in (2, 3, 4):
        for tail in itertools.product(range(2), repeat=d):
            phi = PolyOverFq(2, (1,) + tail)
            assert is_irreducible(phi) == to_galois(phi).is_irreducible()
