"""Tests for the order-24 group library and the S4 fingerprint."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sunada_lab.groups import center_indices, order_statistics
from sunada_lab.small_groups import (
    ORDER24_BUILDERS,
    S4_ORDER_STATISTICS,
    c3_semidirect_c8_table,
    c3_semidirect_d8_table,
    cycle_perm,
    dicyclic_table,
    dihedral_gens,
    fingerprint_unique_identifier,
    group_fingerprint,
    matches_s4_fingerprint,
    order24_library,
    perm_group,
    perm_inverse,
    perm_mul,
    quaternion_perm_gens,
    regular_permutation_group,
    sl23_matrix_cross_check,
)


@pytest.fixture(scope="module")
def library():
    return order24_library()


def test_fifteen_types_all_order_24(library):
    assert len(library) == 15
    assert all(len(t) == 24 for t in library.values())


def test_order_statistics_sum_to_group_order(library):
    for table in library.values():
        assert sum(order_statistics(table).values()) == 24


def euler_phi(d):
    return sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1)


def test_cyclic_counts_match_euler_phi(library):
    # Independent oracle: a cyclic group of order 24 has phi(d) elements of
    # order d for each divisor d.
    stats = order_statistics(library["C24"])
    for d in (1, 2, 3, 4, 6, 8, 12, 24):
        assert stats[d] == euler_phi(d)


def test_dihedral_counts_match_formula(library):
    # Independent oracle: D24 = 12 reflections of order 2 plus a cyclic
    # rotation subgroup of order 12.
    stats = order_statistics(library["D24"])
    rotation = {d: euler_phi(d) for d in (1, 2, 3, 4, 6, 12)}
    expected = dict(rotation)
    expected[2] = rotation[2] + 12
    assert stats == expected


def test_dicyclic_counts_match_formula(library):
    # Independent oracle: in Dic24 every element outside the rotation
    # subgroup squares to the central involution, hence has order 4.
    stats = order_statistics(library["Dic24"])
    rotation = {d: euler_phi(d) for d in (1, 2, 3, 4, 6, 12)}
    expected = dict(rotation)
    expected[4] = rotation[4] + 12
    assert stats == expected


def test_dicyclic_defining_relations():
    table = dicyclic_table(6)
    a, b = ((1, 0), (0, 1))
    pow_a = (0, 0)
    for _ in range(12):
        pow_a = table.mul_key(pow_a, a)
    assert pow_a == (0, 0)
    assert table.mul_key(b, b) == (6, 0)  # b^2 = a^6
    bab_inv = table.mul_key(table.mul_key(b, a), table.inv_key(b))
    assert bab_inv == table.inv_key(a)


def test_semidirect_c3_c8_stats():
    table = regular_permutation_group(c3_semidirect_c8_table())
    assert order_statistics(table) == {1: 1, 2: 1, 3: 2, 4: 2, 6: 2, 8: 12, 12: 4}
    assert len(center_indices(table)) == 4


def test_semidirect_c3_d8_near_miss():
    # This type shares the order-2 and order-4 counts with S4 but differs in
    # the order-3 count and has a nontrivial center: the closest competitor
    # to the S4 fingerprint.
    table = regular_permutation_group(c3_semidirect_d8_table())
    stats = order_statistics(table)
    assert stats == {1: 1, 2: 9, 3: 2, 4: 6, 6: 6}
    assert stats[2] == S4_ORDER_STATISTICS[2]
    assert stats[4] == S4_ORDER_STATISTICS[4]
    assert len(center_indices(table)) == 2


def test_quaternion_generators_give_order_8():
    q8 = perm_group(quaternion_perm_gens(), name="Q8")
    assert len(q8) == 8
    assert order_statistics(q8) == {1: 1, 2: 1, 4: 6}


def test_sl23_permutation_model_matches_matrix_model():
    assert sl23_matrix_cross_check()


def test_s4_fingerprint_values(library):
    stats, center = group_fingerprint(library["S4"])
    assert dict(stats) == S4_ORDER_STATISTICS
    assert center == 1


def test_s4_fingerprint_unique_across_all_types():
    report = fingerprint_unique_identifier()
    assert report["types_built"] == 15
    assert report["matching_s4"] == ["S4"]
    assert report["unique"] is True


def test_fingerprints_pairwise_distinct():
    report = fingerprint_unique_identifier()
    values = list(report["fingerprints"].values())
    assert len(set(values)) == len(values)


def test_matches_s4_fingerprint_requires_all_three_conditions():
    assert matches_s4_fingerprint(24, dict(S4_ORDER_STATISTICS), 1)
    assert not matches_s4_fingerprint(24, dict(S4_ORDER_STATISTICS), 2)
    assert not matches_s4_fingerprint(48, dict(S4_ORDER_STATISTICS), 1)
    assert not matches_s4_fingerprint(24, {1: 1, 2: 9, 3: 2, 4: 6, 6: 6}, 1)


def test_regular_representation_preserves_structure(library):
    table = library["S4"]
    regular = regular_permutation_group(table)
    assert len(regular) == len(table)
    assert order_statistics(regular) == order_statistics(table)


@given(st.permutations(range(6)), st.permutations(range(6)))
def test_perm_mul_inverse_roundtrip(p, q):
    p, q = tuple(p), tuple(q)
    prod = perm_mul(p, q)
    assert perm_mul(perm_mul(prod, perm_inverse(q)), perm_inverse(p)) == tuple(range(6))


@given(st.permutations(range(7)))
def test_perm_inverse_involution(p):
    p = tuple(p)
    assert perm_inverse(perm_inverse(p)) == p


def test_cycle_perm_has_full_order():
    table = perm_group([cycle_perm(24)])
    assert table.element_order(table.idx(cycle_perm(24))) == 24


def test_dihedral_gens_relations():
    rot, ref = dihedral_gens(12)
    assert perm_mul(ref, ref) == tuple(range(12))
    # reflection conjugates rotation to its inverse
    conj = perm_mul(perm_mul(ref, rot), perm_inverse(ref))
    assert conj == perm_inverse(rot)
