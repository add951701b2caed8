"""The 168-element matrix group over Z/2 and its two index-7 subgroups.

This module builds the simple group of invertible 3x3 matrices over the
two-element field and carves out the two block-triangular subgroups of
order 24: the stabilizer of the coordinate line spanned by the first
standard basis vector (first column of the form (1,0,0)^t) and its
transpose pattern (first row of the form (1,0,0)).  The transpose-inverse
map is an automorphism interchanging the two subgroups while preserving
conjugacy classes, which makes the pair a Sunada triple.

On top of that triple the module packages:

* classification of all 168 elements by order and canonical class
  representative, including the determinant test for order 7
  (``g != I and det(g + I) != 0`` over Z/2);
* the cycle-structure table of the two 7-point coset actions, emitted as
  text and as stable JSON;
* the 2x2 off-diagonal sign-flip automorphism ``tau`` together with the
  machinery deciding whether it is inner for a given odd prime modulus;
* a statistics-level comparison with the order-168 projective group of
  2x2 matrices over Z/7 (same class count, class sizes, and element-order
  profile) -- no explicit isomorphism is constructed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Optional, Tuple

from .modp import (
    InputError,
    ModMatrix,
    ProjMatrix,
    smallest_sqrt,
    transpose_inverse,
)
from .groups import (
    GroupTable,
    Subgroup,
    class_of_map,
    conjugacy_classes,
    coset_action,
    cycle_type,
    left_cosets,
    matrix_group,
    order_statistics,
    psl2,
)
from .sunada import SunadaTriple

CYCLE_TABLE_SCHEMA = "sunada-lab/cycle-table/v1"

#: Canonical class representatives, one per nonidentity conjugacy class,
#: listed by element order (the two order-7 classes are distinguished by
#: their characteristic polynomials).
CANONICAL_CLASS_REPRESENTATIVES: Tuple[Tuple[Tuple[int, ...], ...], ...] = (
    ((1, 1, 0), (0, 1, 0), (0, 0, 1)),  # order 2
    ((0, 1, 0), (0, 0, 1), (1, 0, 0)),  # order 3
    ((1, 1, 0), (0, 1, 1), (0, 0, 1)),  # order 4
    ((1, 1, 1), (1, 1, 0), (0, 1, 1)),  # order 7, char poly x^3 + x^2 + 1
    ((1, 0, 1), (1, 1, 1), (1, 1, 0)),  # order 7, char poly x^3 + x + 1
)

#: The two order-7 characteristic polynomials (monic, highest degree first).
ORDER_SEVEN_CHAR_POLYS = frozenset({(1, 1, 0, 1), (1, 0, 1, 1)})


def key_to_matrix(G: GroupTable, key: tuple) -> ModMatrix:
    """Rebuild the ModMatrix behind a flat matrix-group element key."""
    d = G.dim
    rows = tuple(tuple(key[d * i + j] for j in range(d)) for i in range(d))
    return ModMatrix(G.modulus, rows)


@dataclass
class FanoTriple:
    """The order-168 matrix group with its two order-24 line stabilizers."""

    group: GroupTable
    h1: Subgroup
    h2: Subgroup

    @cached_property
    def classes(self) -> tuple:
        return conjugacy_classes(self.group)

    @cached_property
    def class_index(self) -> list:
        """Element index -> position of its conjugacy class in ``classes``."""
        return class_of_map(self.group, self.classes)

    @cached_property
    def canonical_rep_of_class(self) -> dict:
        """Class position -> flat key of the canonical representative."""
        G = self.group
        reps: Dict[int, tuple] = {}
        identity_cls = self.class_index[G.idx(G.identity_key)]
        reps[identity_cls] = G.identity_key
        for rows in CANONICAL_CLASS_REPRESENTATIVES:
            key = ModMatrix(2, rows).flat()
            reps[self.class_index[G.idx(key)]] = key
        if len(reps) != len(self.classes):
            raise RuntimeError(
                "canonical representatives do not cover every conjugacy class"
            )
        return reps

    def as_sunada_triple(self) -> SunadaTriple:
        return SunadaTriple(self.group, self.h1, self.h2)


def build_fano_triple() -> FanoTriple:
    """Enumerate the 168-element group and locate the two pattern subgroups.

    Generators: the cyclic coordinate permutation and an elementary
    transvection.  The first subgroup consists of the members whose first
    column is (1,0,0)^t, the second of those whose first row is (1,0,0);
    both have order 24 and index 7.
    """
    cycle = ModMatrix(2, ((0, 1, 0), (0, 0, 1), (1, 0, 0)))
    transvection = ModMatrix(2, ((1, 1, 0), (0, 1, 0), (0, 0, 1)))
    G = matrix_group([cycle, transvection], projective=False, name="GL(3,2)")
    if len(G) != 168:
        raise RuntimeError(f"expected 168 elements, closure found {len(G)}")
    h1_members = [i for i, k in enumerate(G.elements) if k[3] == 0 and k[6] == 0]
    h2_members = [i for i, k in enumerate(G.elements) if k[1] == 0 and k[2] == 0]
    H1 = Subgroup.from_members(G, h1_members)
    H2 = Subgroup.from_members(G, h2_members)
    if H1.order != 24 or H2.order != 24:
        raise RuntimeError(
            f"pattern subgroups have orders {H1.order}, {H2.order}; expected 24"
        )
    return FanoTriple(G, H1, H2)


def transpose_inverse_automorphism(m: ModMatrix) -> ModMatrix:
    """(M^{-1})^t.  Composition of two anti-automorphisms, so an automorphism."""
    return transpose_inverse(m)


def verify_swaps_subgroups(triple: FanoTriple) -> bool:
    """Check that transpose-inverse maps H1 onto H2, elementwise conjugately.

    Two conditions, both required: the image of H1 as a set equals H2, and
    every member of H1 lands in its own conjugacy class.  Together these
    force the permutation characters of G/H1 and G/H2 to agree.
    """
    G = triple.group
    image_keys = set()
    for key in triple.h1.member_keys():
        ikey = transpose_inverse_automorphism(key_to_matrix(G, key)).flat()
        image_keys.add(ikey)
        if triple.class_index[G.idx(key)] != triple.class_index[G.idx(ikey)]:
            return False
    return image_keys == set(triple.h2.member_keys())


# ---------------------------------------------------------------------------
# Element classification


@dataclass(frozen=True)
class ElementClassification:
    """Order, class data, and the order-7 determinant test for one element."""

    order: int
    class_position: int
    class_representative: tuple
    char_poly: tuple
    order_seven: bool


def order_seven_criterion(m: ModMatrix) -> bool:
    """Determinant test over Z/2: nonidentity with det(m + I) nonzero."""
    if m.modulus != 2:
        raise InputError("the order-7 determinant test works over modulus 2")
    if m.is_identity():
        return False
    return (m + ModMatrix.identity(m.modulus, m.dim)).det() != 0


def classify_element(triple: FanoTriple, g) -> ElementClassification:
    """Classify a group element given as a ModMatrix, flat key, or index."""
    G = triple.group
    if isinstance(g, ModMatrix):
        key = g.flat()
    elif isinstance(g, int):
        key = G.key(g)
    else:
        key = tuple(g)
    if key not in G.index:
        raise InputError("element does not belong to the order-168 group")
    i = G.idx(key)
    cls = triple.class_index[i]
    return ElementClassification(
        order=G.element_order(i),
        class_position=cls,
        class_representative=triple.canonical_rep_of_class[cls],
        char_poly=key_to_matrix(G, key).char_poly(),
        order_seven=order_seven_criterion(key_to_matrix(G, key)),
    )


def verify_order_seven_criterion(triple: FanoTriple) -> bool:
    """order(g) = 7 <=> determinant test, exhaustively over all 168 elements."""
    G = triple.group
    for i in range(len(G)):
        has_order_7 = G.element_order(i) == 7
        if has_order_7 != order_seven_criterion(key_to_matrix(G, G.key(i))):
            return False
    return True


def order_seven_char_polys(triple: FanoTriple) -> frozenset:
    """The characteristic polynomials of the two order-7 classes.

    Raises RuntimeError unless there are exactly two order-7 classes and
    their polynomials differ (that difference is what separates the classes).
    """
    G = triple.group
    polys = {}
    for pos, cls in enumerate(triple.classes):
        if G.element_order(cls.representative) == 7:
            polys[pos] = key_to_matrix(G, G.key(cls.representative)).char_poly()
    if len(polys) != 2:
        raise RuntimeError(f"expected two order-7 classes, found {len(polys)}")
    values = frozenset(polys.values())
    if len(values) != 2:
        raise RuntimeError("order-7 classes share a characteristic polynomial")
    return values


# ---------------------------------------------------------------------------
# Cycle structure of the 7-point coset actions


def cycle_structure_table(triple: FanoTriple) -> dict:
    """Map element order -> cycle type of the coset action, for every element.

    Walks all 168 elements acting on both 7-point coset spaces, checks that
    the two actions give the same cycle type element by element and that the
    type depends only on the element's order, and returns the resulting
    {order: cycle type} table.  Any disagreement raises RuntimeError.
    """
    G = triple.group
    space1 = left_cosets(G, triple.h1)
    space2 = left_cosets(G, triple.h2)
    table: Dict[int, tuple] = {}
    for i in range(len(G)):
        t1 = cycle_type(coset_action(G, triple.h1, i, space1))
        t2 = cycle_type(coset_action(G, triple.h2, i, space2))
        if t1 != t2:
            raise RuntimeError(
                f"coset actions disagree on element {i}: {t1} vs {t2}"
            )
        order = G.element_order(i)
        if table.setdefault(order, t1) != t1:
            raise RuntimeError(
                f"two elements of order {order} have different cycle types"
            )
    return dict(sorted(table.items()))


def fixed_point_counts(table: dict) -> dict:
    """Map element order -> number of fixed cosets (1-cycles)."""
    return {order: sum(1 for c in t if c == 1) for order, t in table.items()}


def cycle_table_text(table: dict) -> str:
    """Human-readable rendering of the cycle-structure table."""
    lines = ["order  cycle type       fixed points"]
    fixed = fixed_point_counts(table)
    for order, t in sorted(table.items()):
        type_str = "(" + ", ".join(str(c) for c in t) + ")"
        lines.append(f"{order:>5}  {type_str:<16} {fixed[order]:>12}")
    return "\n".join(lines)


def cycle_table_json(table: dict) -> str:
    """Byte-stable JSON rendering of the cycle-structure table."""
    fixed = fixed_point_counts(table)
    doc = {
        "schema": CYCLE_TABLE_SCHEMA,
        "coset_points": sum(sorted(table.items())[0][1]) if table else 0,
        "rows": [
            {
                "order": order,
                "cycle_type": list(t),
                "fixed_points": fixed[order],
            }
            for order, t in sorted(table.items())
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# The off-diagonal sign-flip automorphism of 2x2 matrix groups


def tau(m: ModMatrix) -> ModMatrix:
    """Flip the signs of the off-diagonal entries: (a b / c d) -> (a -b / -c d).

    Equals conjugation by diag(-1, 1), a determinant -1 matrix, so it is an
    automorphism of any group of determinant-1 matrices; whether it is inner
    depends on the modulus (see ``tau_inner_witness``).
    """
    if m.dim != 2:
        raise InputError("tau is defined for 2x2 matrices")
    (a, b), (c, d) = m.rows
    return ModMatrix(m.modulus, ((a, -b), (-c, d)))


def tau_proj(P: ProjMatrix) -> ProjMatrix:
    """tau on sign classes (well-defined because tau commutes with negation)."""
    return ProjMatrix(tau(P.rep))


def tau_matches_conjugation(m: ModMatrix) -> bool:
    """Check tau(m) = D m D with D = diag(-1, 1) (D is its own inverse)."""
    D = ModMatrix(m.modulus, ((-1, 0), (0, 1)))
    return tau(m) == D * m * D


def tau_inner_witness(p: int) -> Optional[ProjMatrix]:
    """A determinant-1 sign class realizing tau by conjugation, if one exists.

    When -1 is a square mod p, z = diag(i, -i) with i^2 = -1 has determinant
    one and conjugation by z flips exactly the off-diagonal signs, so tau is
    inner.  When -1 is not a square no witness exists (``verify_tau_not_inner``
    certifies this by exhaustive scan); None is returned.
    """
    if p == 2:
        raise InputError("odd prime modulus required")
    i = smallest_sqrt(p - 1, p)
    if i is None:
        return None
    z = ProjMatrix(ModMatrix(p, ((int(i), 0), (0, -int(i)))))
    probes = (
        ModMatrix(p, ((1, 1), (0, 1))),
        ModMatrix(p, ((1, 0), (1, 1))),
        ModMatrix(p, ((0, 1), (-1, 0))),
    )
    for m in probes:
        if (z.rep * m * z.rep.inverse()) != tau(m):
            raise RuntimeError("diagonal witness failed to realize tau")
    return z


def verify_tau_not_inner(p: int) -> bool:
    """Exhaustively certify that no element of psl2(p) realizes tau.

    Scans every sign class z and tests z g z^{-1} = tau(g) on the two
    standard generators; agreement there would force agreement everywhere,
    so a clean scan proves tau is outer.  Returns False if a witness shows
    up (as it must when -1 is a square mod p).
    """
    G = psl2(p)
    gens = [key_to_matrix(G, G.key(i)) for i in G.generator_indices()]
    targets = [ProjMatrix(tau(g)).key() for g in gens]
    for zi in range(len(G)):
        z = key_to_matrix(G, G.key(zi))
        zinv = z.inverse()
        if all(
            ProjMatrix(z * g * zinv).key() == t for g, t in zip(gens, targets)
        ):
            return False
    return True


# ---------------------------------------------------------------------------
# Statistics-level comparison with the 2x2 projective group mod 7


def class_statistics(G: GroupTable) -> dict:
    """Order, class count, sorted class sizes, and element-order profile."""
    classes = conjugacy_classes(G)
    order_class_counts: Dict[int, int] = {}
    for cls in classes:
        o = G.element_order(cls.representative)
        order_class_counts[o] = order_class_counts.get(o, 0) + 1
    return {
        "group_order": len(G),
        "class_count": len(classes),
        "class_sizes": sorted(cls.size for cls in classes),
        "order_statistics": order_statistics(G),
        "order_class_counts": order_class_counts,
    }


def verify_class_statistics_match(triple: Optional[FanoTriple] = None) -> bool:
    """Do the 3x3/Z2 group and the projective 2x2/Z7 group look alike?

    Compares class count, sorted class sizes, element-order statistics, and
    the number of classes per element order.  This is deliberately weaker
    than building an isomorphism: matching statistics is all the downstream
    constructions consume.
    """
    if triple is None:
        triple = build_fano_triple()
    return class_statistics(triple.group) == class_statistics(psl2(7))
