"""Group engine: enumeration, cosets, classes, conjugator scans, products."""

import pytest
from hypothesis import given, settings, strategies as st

from sunada_lab.modp import InputError, ModMatrix, ProjMatrix
from sunada_lab.groups import (
    ConjClass,
    GroupTable,
    ProductGroup,
    Subgroup,
    conjugacy_classes,
    coset_action,
    cycle_type,
    direct_product_tables,
    element_conjugator,
    generate_group,
    left_cosets,
    matrix_group,
    order_statistics,
    perm_cycle_type,
    product_group,
    product_subgroup_keys,
    psl2,
    right_cosets,
    sl2,
    subgroups_conjugate,
    subgroup_center_size,
    trivial_matrix_group,
)
from sunada_lab.modp import SizeLimitError


def proj(n, rows):
    return ProjMatrix(ModMatrix(n, tuple(tuple(r) for r in rows)))


# -- enumeration ------------------------------------------------------------


def test_psl27_order():
    assert len(psl2(7)) == 168


def test_generate_group_from_elementary_matrices():
    g = generate_group([proj(7, [[1, 1], [0, 1]]), proj(7, [[1, 0], [1, 1]])])
    assert len(g) == 168


def test_generate_group_proper_subgroup_from_non_generating_pair():
    # [[4,1],[0,2]] mod 7 cubes to the identity, so together with the
    # order-2 rotation it generates only a 12-element subgroup (A4),
    # not the full 168-element group.  Independently cross-checked by
    # a plain-tuple closure in test_orbifold's erratum tests.
    g = generate_group([proj(7, [[0, 1], [-1, 0]]), proj(7, [[4, 1], [0, 2]])])
    assert len(g) == 12


def test_generate_group_order_two_and_unipotent_give_full_group():
    g = generate_group([proj(7, [[0, 1], [-1, 0]]), proj(7, [[1, 0], [2, 1]])])
    assert len(g) == 168


def test_generate_group_identity_only():
    g = generate_group([ProjMatrix.identity(7, 2)])
    assert len(g) == 1


def test_size_cap_enforced():
    with pytest.raises(SizeLimitError):
        generate_group([proj(7, [[1, 1], [0, 1]]), proj(7, [[1, 0], [1, 1]])], max_size=100)


def test_sl2_orders():
    assert len(sl2(2)) == 6
    assert len(sl2(3)) == 24
    assert len(sl2(7)) == 336


def test_psl2_small_orders():
    assert len(psl2(2)) == 6
    assert len(psl2(3)) == 12
    assert len(psl2(13)) == 1092


@settings(max_examples=30)
@given(st.tuples(st.integers(0, 167), st.integers(0, 167), st.integers(0, 167)))
def test_associativity_spot_checks(triple):
    g = psl2(7)
    a, b, c = triple
    assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


def test_inverse_table():
    g = psl2(7)
    for i in range(0, len(g), 17):
        assert g.mul(i, g.inv(i)) == g.identity


def test_element_orders_divide_group_order():
    g = psl2(7)
    for i in range(len(g)):
        assert 168 % g.element_order(i) == 0


def test_order_statistics_psl27():
    stats = order_statistics(psl2(7))
    assert stats == {1: 1, 2: 21, 3: 56, 4: 42, 7: 48}


# -- subgroups and cosets ---------------------------------------------------


def unipotent_subgroup():
    g = psl2(7)
    u = g.idx(proj(7, [[1, 1], [0, 1]]).key())
    return g, Subgroup.from_generators(g, [u])


def test_subgroup_from_generators():
    g, h = unipotent_subgroup()
    assert h.order == 7


def test_lagrange_for_generated_subgroups():
    g = psl2(7)
    for seed in range(0, 168, 13):
        h = Subgroup.from_generators(g, [seed])
        assert 168 % h.order == 0


def test_subgroup_from_members_validates_closure():
    g = psl2(7)
    with pytest.raises(InputError):
        Subgroup.from_members(g, [g.identity, 5])  # arbitrary pair, not closed


def test_left_cosets_partition():
    g, h = unipotent_subgroup()
    space = left_cosets(g, h)
    assert space.size == 24
    assert sorted(x for b in space.blocks for x in b) == list(range(168))
    # coset reps are the smallest member of their block, in increasing order
    assert all(space.reps[i] == min(space.blocks[i]) for i in range(space.size))
    assert list(space.reps) == sorted(space.reps)


def test_right_cosets_partition():
    g, h = unipotent_subgroup()
    space = right_cosets(g, h)
    assert space.size == 24
    assert sorted(x for b in space.blocks for x in b) == list(range(168))


def test_identity_acts_trivially():
    g, h = unipotent_subgroup()
    space = left_cosets(g, h)
    act = coset_action(g, h, g.identity, space)
    assert act.perm == tuple(range(space.size))


@settings(max_examples=25)
@given(st.integers(0, 167), st.integers(0, 167))
def test_coset_action_is_homomorphism(i, j):
    g, h = unipotent_subgroup()
    space = left_cosets(g, h)
    pi = coset_action(g, h, i, space).perm
    pj = coset_action(g, h, j, space).perm
    pij = coset_action(g, h, g.mul(i, j), space).perm
    assert pij == tuple(pi[pj[v]] for v in range(space.size))


def test_cycle_type_sums_to_coset_count():
    g, h = unipotent_subgroup()
    space = left_cosets(g, h)
    for i in range(0, 168, 29):
        ct = cycle_type(coset_action(g, h, i, space))
        assert sum(ct) == space.size


def test_perm_cycle_type_basic():
    assert perm_cycle_type((1, 0, 2)) == (2, 1)
    assert perm_cycle_type((1, 2, 0)) == (3,)


# -- conjugacy classes ------------------------------------------------------


def test_psl27_class_structure():
    g = psl2(7)
    classes = conjugacy_classes(g)
    assert len(classes) == 6
    assert sorted(c.size for c in classes) == [1, 21, 24, 24, 42, 56]
    order7 = [c for c in classes if g.element_order(c.representative) == 7]
    assert len(order7) == 2


def test_classes_partition_and_reps_minimal():
    g = psl2(7)
    classes = conjugacy_classes(g)
    seen = sorted(m for c in classes for m in c.members)
    assert seen == list(range(168))
    for c in classes:
        assert c.representative == min(c.members)


def test_trivial_group_classes():
    g = generate_group([ProjMatrix.identity(7, 2)])
    assert conjugacy_classes(g) == (ConjClass(0, (0,)),)


def test_element_order_constant_on_classes():
    g = psl2(7)
    for c in conjugacy_classes(g):
        orders = {g.element_order(m) for m in c.members}
        assert len(orders) == 1


# -- conjugator scan --------------------------------------------------------


def test_subgroups_conjugate_self_gives_identity():
    g, h = unipotent_subgroup()
    assert subgroups_conjugate(g, h, h) == g.identity


def test_subgroups_conjugate_between_unipotent_groups():
    g = psl2(7)
    h1 = Subgroup.from_generators(g, [g.idx(proj(7, [[1, 1], [0, 1]]).key())])
    h2 = Subgroup.from_generators(g, [g.idx(proj(7, [[1, 0], [1, 1]]).key())])
    z = subgroups_conjugate(g, h1, h2)
    assert z is not None
    zk = g.key(z)
    conj_keys = {g.mul_key(g.mul_key(zk, k), g.inv_key(zk)) for k in h1.member_keys()}
    assert conj_keys == h2.member_keys()


def test_subgroups_conjugate_symmetric_presence():
    g = psl2(7)
    h1 = Subgroup.from_generators(g, [g.idx(proj(7, [[1, 1], [0, 1]]).key())])
    h2 = Subgroup.from_generators(g, [g.idx(proj(7, [[1, 0], [1, 1]]).key())])
    assert (subgroups_conjugate(g, h1, h2) is None) == (subgroups_conjugate(g, h2, h1) is None)


def test_subgroups_conjugate_size_mismatch_is_none():
    g, h = unipotent_subgroup()
    t = Subgroup.from_generators(g, [g.identity])
    assert subgroups_conjugate(g, h, t) is None


# -- products ---------------------------------------------------------------


def test_product_group_order_formula_vs_closure():
    prod = product_group([sl2(2), sl2(3)])
    assert prod.order == 72
    table = prod.materialize()
    assert len(table) == 72
    # closure from generator tuples must agree with the itertools enumeration
    gens = []
    for i2 in sl2(2).generators:
        gens.append(prod.canonical((sl2(2).key(i2), sl2(3).identity_key)))
    for i3 in sl2(3).generators:
        gens.append(prod.canonical((sl2(2).identity_key, sl2(3).key(i3))))
    from sunada_lab.groups import close_under_products

    closure = close_under_products(gens, prod.mul_key, prod.identity_key)
    assert set(closure) == set(table.elements)


def test_product_group_single_component_matches_psl():
    prod = product_group([sl2(7)])
    assert prod.order == 168
    assert prod.order == len(psl2(7))


def test_product_rejects_shared_prime():
    with pytest.raises(InputError):
        product_group([sl2(7), sl2(7)])


def test_fused_classes_match_brute_force_on_surrogate():
    prod = product_group([sl2(2), sl2(3)])
    table = prod.materialize()
    brute = conjugacy_classes(table, gens=range(len(table)))
    fused = prod.fused_conjugacy_classes()
    assert sum(size for _, size in fused) == 72
    assert len(fused) == len(brute)
    brute_by_rep = {}
    for c in brute:
        brute_by_rep[table.key(c.representative)] = c
    for rep, size in fused:
        # the fused representative must land in a brute-force class of equal size
        matches = [c for c in brute if rep in {table.key(m) for m in c.members}]
        assert len(matches) == 1
        assert matches[0].size == size


def test_fused_classes_without_identification():
    prod = product_group([sl2(2), sl2(3)], identify_center=False)
    assert prod.order == 144
    fused = prod.fused_conjugacy_classes()
    assert sum(size for _, size in fused) == 144
    assert len(fused) == 3 * 7  # class counts of the two components multiply


def test_trivial_component_product():
    prod = product_group([trivial_matrix_group(2), sl2(3)])
    assert prod.order == 12  # 24 / 2 via the (I, -I) identification
    assert len(prod.materialize()) == 12


def test_product_subgroup_keys_counts():
    prod = product_group([sl2(2), sl2(3)])
    full = product_subgroup_keys(prod, [sl2(2).elements, sl2(3).elements])
    assert len(full) == 72
    diag = product_subgroup_keys(
        prod, [[sl2(2).identity_key], sl2(3).elements]
    )
    assert len(diag) == 12  # -I lies in the second slot, halving the raw 24


def test_direct_product_tables():
    t = direct_product_tables([sl2(2), sl2(2)])
    assert len(t) == 36
    stats = order_statistics(t)
    assert stats[1] == 1


def test_subgroup_center_size():
    g = psl2(7)
    h = Subgroup.from_generators(g, [g.idx(proj(7, [[1, 1], [0, 1]]).key())])
    assert subgroup_center_size(g, h.members) == 7  # cyclic, hence abelian


def test_element_conjugator_same_class():
    g = psl2(7)
    x = proj(7, [[3, 0], [0, 5]]).key()
    y = proj(7, [[1, 1], [-1, 0]]).key()
    z = element_conjugator(g, x, y)
    assert z is not None
    conj = g.mul_key(g.mul_key(z, x), g.inv_key(z))
    assert conj == y


def test_element_conjugator_different_class_returns_none():
    g = psl2(7)
    order2 = proj(7, [[0, 1], [-1, 0]]).key()
    order3 = proj(7, [[1, 1], [-1, 0]]).key()
    assert element_conjugator(g, order2, order3) is None


def test_element_conjugator_identity_for_self():
    g = psl2(7)
    x = proj(7, [[1, 1], [0, 1]]).key()
    z = element_conjugator(g, x, x)
    assert z == g.identity_key
