"""Residue and matrix arithmetic: frozen examples plus algebraic properties."""

import pytest
from hypothesis import given, strategies as st

from sunada_lab.modp import (
    InputError,
    ModMatrix,
    ProjMatrix,
    Residue,
    SingularMatrixError,
    canonical_sign_key,
    is_prime,
    is_quadratic_residue,
    psl_order,
    smallest_nonresidue,
    smallest_sqrt,
    sqrt_mod,
    transpose_inverse,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23]


def mm(n, rows):
    return ModMatrix(n, tuple(tuple(r) for r in rows))


def naive_matmul(n, a, b):
    d = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(d)) % n for j in range(d))
        for i in range(d)
    )


# -- matrix examples --------------------------------------------------------


def test_product_example_mod7():
    a = mm(7, [[0, 1], [-1, 0]])
    b = mm(7, [[0, 2], [3, 0]])
    assert (a * b).rows == naive_matmul(7, a.rows, b.rows)
    assert (a * b).rows == ((3, 0), (0, 5))


def test_identity_product_fixed_point():
    m = mm(7, [[2, 1], [1, 1]])
    assert m * ModMatrix.identity(7, 2) == m


def test_inverse_rotation():
    m = mm(7, [[0, 1], [-1, 0]])
    inv = m.inverse()
    assert inv.rows == ((0, 6), (1, 0))
    assert (m * inv).is_identity()


def test_inverse_upper_triangular_product_is_identity():
    # the product-with-inverse check is the oracle for the frozen entries
    m = mm(7, [[4, 1], [0, 2]])
    inv = m.inverse()
    assert (m * inv).is_identity()
    assert (inv * m).is_identity()
    assert inv.rows == ((2, 6), (0, 4))


def test_inverse_of_identity():
    i = ModMatrix.identity(7, 2)
    assert i.inverse() == i


def test_singular_matrix_rejected():
    with pytest.raises(SingularMatrixError):
        mm(7, [[1, 1], [1, 1]]).inverse()


def test_char_poly_identity_mod7():
    assert ModMatrix.identity(7, 2).char_poly() == (1, 5, 1)


def test_char_poly_f2_order7_representatives_differ():
    r1 = mm(2, [[1, 1, 1], [1, 1, 0], [0, 1, 1]])
    r2 = mm(2, [[1, 0, 1], [1, 1, 1], [1, 1, 0]])
    assert r1.char_poly() == (1, 1, 0, 1)  # x^3 + x^2 + 1
    assert r2.char_poly() == (1, 0, 1, 1)  # x^3 + x + 1
    assert r1.char_poly() != r2.char_poly()


def test_char_poly_matches_trace_det_2x2():
    m = mm(7, [[4, 1], [0, 2]])
    assert m.char_poly() == (1, (-m.trace()) % 7, m.det())


def test_only_dims_2_and_3():
    with pytest.raises(InputError):
        ModMatrix(7, ((1,),))
    with pytest.raises(InputError):
        ModMatrix(7, tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4)))


def test_modulus_mismatch_rejected():
    with pytest.raises(InputError):
        mm(7, [[1, 0], [0, 1]]) * mm(5, [[1, 0], [0, 1]])


# -- projective classes -----------------------------------------------------


def test_psl_order_examples():
    assert psl_order(ProjMatrix(mm(7, [[1, 1], [0, 1]]))) == 7
    assert psl_order(ProjMatrix(mm(7, [[0, 1], [-1, 0]]))) == 2
    assert psl_order(ProjMatrix(mm(7, [[2, 1], [1, 1]]))) == 4
    assert psl_order(ProjMatrix(mm(7, [[1, 1], [-1, 0]]))) == 3
    assert psl_order(ProjMatrix.identity(7, 2)) == 1


def test_proj_requires_det_one():
    with pytest.raises(InputError):
        ProjMatrix(mm(7, [[2, 0], [0, 2]]))


def test_proj_identifies_sign():
    m = mm(7, [[1, 1], [0, 1]])
    assert ProjMatrix(m) == ProjMatrix(-m)


def test_odd_dim_projective_only_mod2():
    ProjMatrix(ModMatrix.identity(2, 3))
    with pytest.raises(InputError):
        ProjMatrix(ModMatrix.identity(7, 3))


def random_sl2_words(p):
    t = mm(p, [[1, 1], [0, 1]])
    l = mm(p, [[1, 0], [1, 1]])
    return st.lists(st.sampled_from([t, l]), min_size=0, max_size=8).map(
        lambda ws: _word_product(p, ws)
    )


def _word_product(p, ws):
    acc = ModMatrix.identity(p, 2)
    for w in ws:
        acc = acc * w
    return acc


@given(st.sampled_from([3, 5, 7, 11]).flatmap(lambda p: random_sl2_words(p)))
def test_canonical_form_ignores_sign(m):
    assert canonical_sign_key(m.flat(), m.modulus) == canonical_sign_key((-m).flat(), m.modulus)
    assert ProjMatrix(m) == ProjMatrix(-m)


@given(
    st.sampled_from([3, 7, 11]).flatmap(
        lambda p: st.tuples(random_sl2_words(p), random_sl2_words(p))
    )
)
def test_transpose_inverse_is_multiplicative(pair):
    a, b = pair
    assert transpose_inverse(a * b) == transpose_inverse(a) * transpose_inverse(b)


@given(
    st.sampled_from([5, 7, 13]).flatmap(
        lambda p: st.tuples(random_sl2_words(p), random_sl2_words(p))
    )
)
def test_psl_order_is_conjugation_invariant(pair):
    a, z = pair
    pa = ProjMatrix(a)
    pz = ProjMatrix(z)
    assert psl_order(pz * pa * pz.inverse()) == psl_order(pa)


# -- residues ---------------------------------------------------------------


def test_residue_arithmetic_round_trip():
    a = Residue(5, 7)
    assert (a + 4).value == 2
    assert (a * 3).value == 1
    assert (-a).value == 2
    assert (a / 3).value == 4  # 4*3 = 12 = 5
    assert (a ** 0).value == 1
    assert a.inverse().value == 3  # 5*3 = 15 = 1


def test_residue_modulus_mismatch():
    with pytest.raises(InputError):
        Residue(1, 7) + Residue(1, 5)


def test_sqrt_examples():
    assert {r.value for r in sqrt_mod(4, 7)} == {2, 5}
    assert sqrt_mod(-1, 7) == frozenset()
    assert {r.value for r in sqrt_mod(0, 11)} == {0}
    assert smallest_sqrt(4, 7).value == 2
    assert smallest_sqrt(-1, 7) is None


def test_sqrt_rejects_composite():
    with pytest.raises(InputError):
        sqrt_mod(1, 15)


def test_half_has_square_root_mod_7():
    half = Residue(2, 7).inverse()
    assert half.value == 4
    assert {r.value for r in sqrt_mod(half, 7)} == {2, 5}


@given(st.sampled_from(SMALL_PRIMES[1:]), st.integers(min_value=0, max_value=400))
def test_sqrt_matches_euler_criterion(p, a):
    roots = sqrt_mod(a, p)
    assert bool(roots) == is_quadratic_residue(a, p)
    for r in roots:
        assert (r * r).value == a % p


def test_quadratic_residue_counts():
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29]:
        nonzero = [a for a in range(1, p) if is_quadratic_residue(a, p)]
        assert len(nonzero) == (p - 1) // 2


def test_reciprocity_style_laws_below_200():
    odd_primes = [p for p in range(3, 200) if is_prime(p)]
    for p in odd_primes:
        assert is_quadratic_residue(2, p) == (p % 8 in (1, 7))
        assert is_quadratic_residue(-1, p) == (p % 4 == 1)


def test_smallest_nonresidue():
    assert smallest_nonresidue(7) == 3
    assert not is_quadratic_residue(smallest_nonresidue(17), 17)
