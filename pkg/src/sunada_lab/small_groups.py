"""Library of all fifteen isomorphism types of groups of order 24.

Each type is realized as a small permutation group (permutations stored as
image tuples).  The point of the library is the uniqueness check in
:func:`fingerprint_unique_identifier`: among all groups of order 24, the pair
(order statistics, center size) of the symmetric group on four letters occurs
for no other isomorphism type, so that pair is a sound identification
criterion for subgroups built elsewhere in this package.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .groups import (
    GroupTable,
    center_indices,
    close_under_products,
    order_statistics,
    sl2,
)
from .modp import InputError

# ---------------------------------------------------------------------------
# Permutation plumbing (permutation = tuple of images; (p*q)(i) = p[q[i]])


def perm_identity(n: int) -> tuple:
    return tuple(range(n))


def perm_mul(p: tuple, q: tuple) -> tuple:
    return tuple(p[i] for i in q)


def perm_inverse(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, image in enumerate(p):
        out[image] = i
    return tuple(out)


def perm_group(gens: Sequence[tuple], name: str = "") -> GroupTable:
    """Group generated by permutations on a common point set."""
    gens = [tuple(g) for g in gens]
    if not gens:
        raise InputError("need at least one permutation generator")
    n = len(gens[0])
    if any(len(g) != n or sorted(g) != list(range(n)) for g in gens):
        raise InputError("generators must be permutations of the same points")
    identity = perm_identity(n)
    elements = close_under_products(gens, perm_mul, identity)
    table = GroupTable(
        elements,
        perm_mul,
        perm_inverse,
        identity,
        name=name,
        generators=[elements.index(g) for g in gens],
    )
    return table


def shift_points(p: tuple, offset: int, total: int) -> tuple:
    """Embed a permutation into a larger point set at the given offset."""
    out = list(range(total))
    for i, image in enumerate(p):
        out[offset + i] = offset + image
    return tuple(out)


def disjoint_union_gens(blocks: Sequence[Sequence[tuple]]) -> List[tuple]:
    """Generators of a direct product acting on the disjoint union of points."""
    sizes = [len(b[0]) for b in blocks]
    total = sum(sizes)
    gens: List[tuple] = []
    offset = 0
    for block, size in zip(blocks, sizes):
        for p in block:
            gens.append(shift_points(p, offset, total))
        offset += size
    return gens


def cycle_perm(n: int) -> tuple:
    return tuple((i + 1) % n for i in range(n))


def dihedral_gens(n: int) -> List[tuple]:
    """Rotation and reflection of a regular n-gon (group order 2n)."""
    rotation = cycle_perm(n)
    reflection = tuple((-i) % n for i in range(n))
    return [rotation, reflection]


def regular_permutation_group(table: GroupTable, name: str = "") -> GroupTable:
    """Rebuild a key-based table as a permutation group via left translation."""
    gens = []
    gen_indices = table.generator_indices()
    if not gen_indices:
        raise InputError("table carries no generators to act with")
    for gi in gen_indices:
        g_key = table.key(gi)
        gens.append(tuple(table.idx(table.mul_key(g_key, x)) for x in table.elements))
    group = perm_group(gens, name=name or f"regular({table.name})")
    if len(group) != len(table):
        raise InputError("regular representation changed the group order")
    return group


# ---------------------------------------------------------------------------
# Key-based builders for the semidirect/dicyclic types


def cyclic_table(n: int, name: str = "") -> GroupTable:
    elements = list(range(n))

    def mul_key(a, b):
        return (a + b) % n

    def inv_key(a):
        return (-a) % n

    return GroupTable(elements, mul_key, inv_key, 0, name=name or f"C{n}", generators=[1])


def dicyclic_table(n: int) -> GroupTable:
    """Dicyclic group of order 4n: <a, b | a^(2n)=1, b^2=a^n, b a b^-1 = a^-1>.

    Keys are (j, e) for a^j b^e with j mod 2n and e in {0, 1}.
    """
    if n < 2:
        raise InputError("dicyclic groups need n >= 2")
    m = 2 * n
    elements = [(j, e) for e in (0, 1) for j in range(m)]

    def mul_key(x, y):
        j, e = x
        k, f = y
        if e == 0:
            return ((j + k) % m, f)
        # (a^j b)(a^k b^f) = a^(j-k) b^(1+f), and b^2 = a^n
        if f == 0:
            return ((j - k) % m, 1)
        return ((j - k + n) % m, 0)

    def inv_key(x):
        j, e = x
        if e == 0:
            return ((-j) % m, 0)
        # (a^j b)^-1 = a^(j-n) b  since (a^j b)(a^(j-n) b) = a^(n+n) = 1
        return ((j - n) % m, 1)

    table = GroupTable(elements, mul_key, inv_key, (0, 0), name=f"Dic{4 * n}")
    table.generators = (table.idx((1, 0)), table.idx((0, 1)))
    return table


def c3_semidirect_c8_table() -> GroupTable:
    """C3 : C8 with the generator of C8 inverting C3."""
    elements = [(c, x) for x in range(8) for c in range(3)]

    def mul_key(u, v):
        c, x = u
        d, y = v
        sign = -1 if x % 2 else 1
        return ((c + sign * d) % 3, (x + y) % 8)

    def inv_key(u):
        c, x = u
        sign = -1 if x % 2 else 1
        return ((-sign * c) % 3, (-x) % 8)

    table = GroupTable(elements, mul_key, inv_key, (0, 0), name="C3:C8")
    table.generators = (table.idx((1, 0)), table.idx((0, 1)))
    return table


def c3_semidirect_d8_table() -> GroupTable:
    """C3 : D8 where the rotation of D8 inverts C3 and the reflection fixes it.

    D8 keys are (j, e) = r^j s^e with r^4 = s^2 = 1, s r s = r^-1; the acting
    sign of (j, e) is (-1)^j, whose kernel is the Klein subgroup <r^2, s>.
    """
    elements = [(c, (j, e)) for e in (0, 1) for j in range(4) for c in range(3)]

    def d8_mul(x, y):
        j, e = x
        k, f = y
        if e == 0:
            return ((j + k) % 4, f)
        return ((j - k) % 4, 1 - f)

    def d8_inv(x):
        j, e = x
        if e == 0:
            return ((-j) % 4, 0)
        return (j, 1)

    def sign(x):
        return -1 if x[0] % 2 else 1

    def mul_key(u, v):
        c, x = u
        d, y = v
        return ((c + sign(x) * d) % 3, d8_mul(x, y))

    def inv_key(u):
        c, x = u
        xi = d8_inv(x)
        return ((-sign(xi) * c) % 3, xi)

    table = GroupTable(elements, mul_key, inv_key, (0, (0, 0)), name="C3:D8")
    table.generators = (
        table.idx((1, (0, 0))),
        table.idx((0, (1, 0))),
        table.idx((0, (0, 1))),
    )
    return table


# ---------------------------------------------------------------------------
# Natural matrix-action permutations over F3 (for SL(2,3) and Q8)


def _f3_vector_action_perm(matrix_rows: Sequence[Sequence[int]]) -> tuple:
    """Permutation induced on the 8 nonzero vectors of F3^2 by a matrix."""
    vectors = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vectors)}
    (m00, m01), (m10, m11) = matrix_rows
    images = []
    for (a, b) in vectors:
        w = ((m00 * a + m01 * b) % 3, (m10 * a + m11 * b) % 3)
        images.append(pos[w])
    return tuple(images)


def sl23_perm_gens() -> List[tuple]:
    return [
        _f3_vector_action_perm([[0, 1], [-1, 0]]),
        _f3_vector_action_perm([[1, 1], [0, 1]]),
    ]


def quaternion_perm_gens() -> List[tuple]:
    # i and j of the quaternion group, inside SL(2,3) acting on F3^2 \ {0}.
    return [
        _f3_vector_action_perm([[0, 1], [-1, 0]]),
        _f3_vector_action_perm([[1, 1], [1, -1]]),
    ]


# ---------------------------------------------------------------------------
# The fifteen isomorphism types


def _build_c24() -> GroupTable:
    return perm_group([cycle_perm(24)], name="C24")


def _build_c12_x_c2() -> GroupTable:
    return perm_group(
        disjoint_union_gens([[cycle_perm(12)], [cycle_perm(2)]]), name="C12xC2"
    )


def _build_c6_x_c2_x_c2() -> GroupTable:
    return perm_group(
        disjoint_union_gens([[cycle_perm(6)], [cycle_perm(2)], [cycle_perm(2)]]),
        name="C6xC2xC2",
    )


def _build_s4() -> GroupTable:
    return perm_group([(1, 0, 2, 3), (1, 2, 3, 0)], name="S4")


def _build_a4_x_c2() -> GroupTable:
    a4_gens = [(1, 2, 0, 3), (0, 2, 3, 1)]  # two 3-cycles generating A4
    return perm_group(disjoint_union_gens([a4_gens, [cycle_perm(2)]]), name="A4xC2")


def _build_sl23() -> GroupTable:
    return perm_group(sl23_perm_gens(), name="SL(2,3)")


def _build_d24() -> GroupTable:
    return perm_group(dihedral_gens(12), name="D24")


def _build_dic24() -> GroupTable:
    return regular_permutation_group(dicyclic_table(6), name="Dic24")


def _build_c3_semidirect_c8() -> GroupTable:
    return regular_permutation_group(c3_semidirect_c8_table(), name="C3:C8")


def _build_c3_x_d8() -> GroupTable:
    return perm_group(
        disjoint_union_gens([[cycle_perm(3)], dihedral_gens(4)]), name="C3xD8"
    )


def _build_c3_x_q8() -> GroupTable:
    return perm_group(
        disjoint_union_gens([[cycle_perm(3)], quaternion_perm_gens()]), name="C3xQ8"
    )


def _build_s3_x_c4() -> GroupTable:
    s3_gens = [(1, 2, 0), (1, 0, 2)]
    return perm_group(disjoint_union_gens([s3_gens, [cycle_perm(4)]]), name="S3xC4")


def _build_s3_x_c2_x_c2() -> GroupTable:
    s3_gens = [(1, 2, 0), (1, 0, 2)]
    return perm_group(
        disjoint_union_gens([s3_gens, [cycle_perm(2)], [cycle_perm(2)]]),
        name="S3xC2xC2",
    )


def _build_c2_x_dic12() -> GroupTable:
    dic12 = regular_permutation_group(dicyclic_table(3), name="Dic12")
    gens = disjoint_union_gens(
        [[dic12.key(i) for i in dic12.generator_indices()], [cycle_perm(2)]]
    )
    return perm_group(gens, name="C2xDic12")


def _build_c3_semidirect_d8() -> GroupTable:
    return regular_permutation_group(c3_semidirect_d8_table(), name="C3:D8")


ORDER24_BUILDERS = {
    "C24": _build_c24,
    "C12xC2": _build_c12_x_c2,
    "C6xC2xC2": _build_c6_x_c2_x_c2,
    "S4": _build_s4,
    "A4xC2": _build_a4_x_c2,
    "SL(2,3)": _build_sl23,
    "D24": _build_d24,
    "Dic24": _build_dic24,
    "C3:C8": _build_c3_semidirect_c8,
    "C3xD8": _build_c3_x_d8,
    "C3xQ8": _build_c3_x_q8,
    "S3xC4": _build_s3_x_c4,
    "S3xC2xC2": _build_s3_x_c2_x_c2,
    "C2xDic12": _build_c2_x_dic12,
    "C3:D8": _build_c3_semidirect_d8,
}


def order24_library() -> Dict[str, GroupTable]:
    """All fifteen isomorphism types of order-24 groups, keyed by name."""
    library = {}
    for name, builder in ORDER24_BUILDERS.items():
        table = builder()
        if len(table) != 24:
            raise InputError(f"{name} built with order {len(table)}, expected 24")
        library[name] = table
    return library


# ---------------------------------------------------------------------------
# Fingerprint


S4_ORDER_STATISTICS = {1: 1, 2: 9, 3: 8, 4: 6}


def group_fingerprint(table: GroupTable) -> Tuple[tuple, int]:
    """(sorted order-statistics items, center size) of a group table."""
    stats = tuple(sorted(order_statistics(table).items()))
    return stats, len(center_indices(table))


def matches_s4_fingerprint(order: int, stats: Dict[int, int], center_size: int) -> bool:
    return order == 24 and stats == S4_ORDER_STATISTICS and center_size == 1


def fingerprint_unique_identifier() -> Dict[str, object]:
    """Brute-force proof that the S4 fingerprint occurs only for S4.

    Builds every order-24 isomorphism type and checks (a) exactly one has the
    S4 fingerprint, namely the symmetric-group construction, and (b) the
    (order statistics, center size) pairs are pairwise distinct across all
    fifteen types, so the fingerprint criterion cannot confuse any two types.
    """
    library = order24_library()
    fingerprints = {name: group_fingerprint(t) for name, t in library.items()}
    matching = [
        name
        for name, (stats, center) in fingerprints.items()
        if matches_s4_fingerprint(24, dict(stats), center)
    ]
    distinct = len(set(fingerprints.values())) == len(fingerprints)
    return {
        "types_built": len(library),
        "fingerprints": fingerprints,
        "matching_s4": matching,
        "unique": matching == ["S4"] and distinct,
    }


def sl23_matrix_cross_check() -> bool:
    """The permutation model of SL(2,3) matches the matrix model exactly."""
    perm_model = _build_sl23()
    matrix_model = sl2(3)
    return (
        len(perm_model) == len(matrix_model) == 24
        and order_statistics(perm_model) == order_statistics(matrix_model)
        and len(center_indices(perm_model)) == len(center_indices(matrix_model)) == 2
    )
