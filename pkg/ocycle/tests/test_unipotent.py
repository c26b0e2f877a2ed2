from fractions import Fraction

import pytest

from ocycle.cycleindex import RcfData, p_diff_unipotent
from ocycle.errors import BadDimension, InputError, InvalidData
from ocycle.orders import gl_unip_centralizer, sp_order
from ocycle.partitions import iter_partitions_up_to, make_partition, odd_parts_even_mult
from ocycle.qpoly import parse_poly
from ocycle.unipotent import (
    CanonicalDecomposition,
    ClassLabel,
    OClassData,
    class_labels,
    class_table,
    d_exponent,
    decompositions_of_type,
    enum_decomps,
    induced_weil,
    jordan_lift_odd_dim,
    k_intervals,
    linked_interval,
    o_class_data,
    sp_invariants,
    w_centralizer_order,
    weil_diff_value,
)

W = lambda *terms: CanonicalDecomposition(w_terms=tuple(terms))
V = lambda *terms: CanonicalDecomposition(v_terms=tuple(terms))


def test_small_enumerations():
    assert {str(d) for d in enum_decomps(2)} == {"W(1)^1", "V(2)^1"}
    four = {str(d) for d in enum_decomps(4)}
    assert four == {"W(1)^2", "W(2)^1", "W(1)^1+V(2)^1", "V(2)^2", "V(4)^1"}
    with pytest.raises(BadDimension):
        enum_decomps(3)


def test_decomposition_constraints():
    with pytest.raises(InvalidData):
        CanonicalDecomposition(v_terms=((1, 3),))
    with pytest.raises(InvalidData):
        CanonicalDecomposition(w_terms=((2, 1), (1, 1)))
    d = CanonicalDecomposition(w_terms=((1, 1),), v_terms=((1, 2),))
    assert d.dimension == 6
    assert d.jordan_type == make_partition([2, 2, 1, 1])


def test_every_decomposition_has_its_jordan_type():
    for dim in (2, 4, 6, 8):
        decomps = enum_decomps(dim)
        assert len(decomps) == len(set(decomps))
        for d in decomps:
            assert d.dimension == dim
            assert d in decompositions_of_type(d.jordan_type)


def test_sp_invariants():
    inv = sp_invariants(V((2, 1)))
    assert (inv.s, inv.t, inv.delta, inv.class_count) == (0, 0, 1, 2)
    assert sp_invariants(V((1, 2))).class_count == 1
    assert sum(sp_invariants(d).class_count for d in enum_decomps(4)) == 6


def test_k_intervals_cut_at_gaps():
    assert k_intervals([1, 2, 4, 5, 6, 9]) == ((1, 2), (4, 5, 6), (9,))
    assert k_intervals([]) == ()


def test_linked_interval():
    runs = k_intervals([1, 2, 5])
    assert linked_interval(3, runs) == 0
    assert linked_interval(9, runs) == 1
    assert linked_interval(7, runs) is None


def test_orthogonal_class_data():
    exceptional = W((2, 1))
    assert exceptional.is_exceptional()
    assert o_class_data(exceptional, 1) == OClassData(True, 1, 2)
    assert not o_class_data(exceptional, -1).exists
    v22 = o_class_data(V((1, 2)), -1)
    assert v22.exists and v22.h_class_count == 1
    assert o_class_data(V((1, 2)), 1).h_class_count == 1


def test_class_tables_in_dimension_four():
    sp = {row.jordan_type: row.count for row in class_table(4, "Sp")}
    assert sum(sp.values()) == 6
    plus = {row.jordan_type: row.count for row in class_table(4, "Oplus")}
    minus = {row.jordan_type: row.count for row in class_table(4, "Ominus")}
    assert plus[make_partition([2, 2])] == 2
    assert minus[make_partition([2, 2])] == 1
    for row in class_table(6, "Oplus") + class_table(6, "Ominus"):
        assert row.count == len(row.sign_sequences)


def test_orthogonal_labels_carry_the_group_sign():
    for d in enum_decomps(6):
        for context, eps in (("Oplus", 1), ("Ominus", -1)):
            for label in class_labels(d, context):
                assert d.is_exceptional() or label.sign == eps
    with pytest.raises(InputError):
        class_labels(W((1, 1)), "GL")


def test_weil_difference_values():
    identity_2 = ClassLabel(W((1, 1)), "Sp", ())
    assert weil_diff_value(identity_2, 2) == 2
    assert weil_diff_value(identity_2, 4) == 4
    assert weil_diff_value(ClassLabel(V((1, 1)), "Sp", class_labels(V((1, 1)), "Sp")[0].signs), 2) == 0
    assert weil_diff_value(ClassLabel(W((1, 2)), "Sp", ()), 2) == 4
    with pytest.raises(InputError):
        weil_diff_value(ClassLabel(W((1, 1)), "Oplus", ()), 2)


def test_induced_weil_values():
    assert induced_weil(make_partition([2]), 2) == 0
    assert induced_weil(make_partition([2]), 4) == 0
    assert induced_weil(make_partition([1, 1]), 2) == 2
    assert induced_weil(make_partition([1, 1, 1, 1]), 2) == 112
    with pytest.raises(BadDimension):
        induced_weil(make_partition([3]), 2)


@pytest.mark.parametrize("q", [2, 4])
def test_induced_weil_over_gl_centralizer_is_the_diff_weight(q):
    for lam in iter_partitions_up_to(16, odd_parts_even_mult):
        if lam.size % 2:
            continue
        value = induced_weil(lam, q)
        assert value >= 0
        assert value / gl_unip_centralizer(lam, q) == p_diff_unipotent(lam, q)


def test_d_exponent_and_centralizers():
    assert d_exponent(make_partition([1, 1])) == 0
    assert d_exponent(make_partition([2, 2])) == 3
    assert d_exponent(make_partition([1, 1, 1, 1])) == 0
    assert w_centralizer_order(W((2, 1)), (), 2) == 48
    assert sp_order(4, 2) // w_centralizer_order(W((2, 1)), (), 2) == 15
    assert w_centralizer_order(W((1, 2)), (), 2) == sp_order(4, 2)
    with pytest.raises(InvalidData):
        w_centralizer_order(V((1, 1)), (), 2)


def test_odd_dimension_lift():
    z1 = parse_poly("z+1", 2)
    lift = jordan_lift_odd_dim(RcfData.from_mapping(2, {z1: make_partition([1, 1])}))
    assert lift.z_minus_1_partition == make_partition([1, 1, 1])
    lift = jordan_lift_odd_dim(RcfData.from_mapping(2, {z1: make_partition([2])}))
    assert lift.z_minus_1_partition == make_partition([2, 1])
    w = parse_poly("z^2+z+1", 2)
    lift = jordan_lift_odd_dim(RcfData.from_mapping(2, {w: make_partition([1])}))
    assert lift.get(w) == make_partition([1])
    assert lift.z_minus_1_partition == make_partition([1])
    assert lift.dimension == 3
