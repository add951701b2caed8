"""Finite group engine on hashable element keys.

Groups are fully enumerated element lists with multiplication delegated to
key-level functions (flat entry tuples for matrix groups, plain tuples for
abstract constructions).  Element order within a table is the breadth-first
discovery order from the generators, which makes every downstream artifact
(coset labels, class representatives, search witnesses) deterministic.

All scans (conjugator searches, class builds) walk elements in index order and
return the smallest-index witness, so they can be partitioned into index
ranges and merged by taking the minimum without changing the answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .modp import (
    InputError,
    ModMatrix,
    ProjMatrix,
    SizeLimitError,
    canonical_sign_key,
    is_prime,
)

DEFAULT_MAX_GROUP_SIZE = 5_000_000


class GroupTable:
    """Fully enumerated finite group.

    elements[i] is the key of element i; `index` inverts that list.  The
    multiplication table is never materialized: products are computed on
    demand through `mul_key`, which keeps memory linear in the group order.
    """

    def __init__(
        self,
        elements: Sequence,
        mul_key: Callable,
        inv_key: Callable,
        identity_key,
        name: str = "",
        generators: Sequence[int] = (),
    ) -> None:
        self.elements = list(elements)
        self.index = {k: i for i, k in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise InputError("duplicate element keys")
        if identity_key not in self.index:
            raise InputError("identity key missing from element list")
        self.mul_key = mul_key
        self.inv_key = inv_key
        self.identity_key = identity_key
        self.identity = self.index[identity_key]
        self.name = name or f"group[{len(self.elements)}]"
        self.generators = tuple(generators)
        self._inv_cache: list = [None] * len(self.elements)
        self._order_cache: list = [None] * len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def key(self, i: int):
        return self.elements[i]

    def idx(self, key) -> int:
        return self.index[key]

    def mul(self, i: int, j: int) -> int:
        return self.index[self.mul_key(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        cached = self._inv_cache[i]
        if cached is None:
            cached = self.index[self.inv_key(self.elements[i])]
            self._inv_cache[i] = cached
        return cached

    def conj(self, z: int, x: int) -> int:
        """z x z^-1."""
        return self.mul(self.mul(z, x), self.inv(z))

    def element_order(self, i: int) -> int:
        cached = self._order_cache[i]
        if cached is None:
            e = self.identity
            acc = i
            k = 1
            while acc != e:
                acc = self.mul(acc, i)
                k += 1
            cached = k
            self._order_cache[i] = cached
        return cached

    def generator_indices(self) -> tuple:
        return self.generators if self.generators else tuple(range(len(self)))


def close_under_products(
    gens: Sequence,
    mul_key: Callable,
    identity_key,
    max_size: int = DEFAULT_MAX_GROUP_SIZE,
) -> list:
    """BFS closure of `gens` under products, in deterministic discovery order.

    In a finite group, closure under products alone already contains inverses.
    """
    elements = [identity_key]
    seen = {identity_key}
    frontier = [identity_key]
    gens = list(gens)
    while frontier:
        next_frontier = []
        for x in frontier:
            for g in gens:
                y = mul_key(x, g)
                if y not in seen:
                    if len(seen) >= max_size:
                        raise SizeLimitError(f"group closure exceeded cap {max_size}")
                    seen.add(y)
                    elements.append(y)
                    next_frontier.append(y)
        frontier = next_frontier
    return elements


# ---------------------------------------------------------------------------
# Matrix group constructors (keys are flat row-major entry tuples)


def _matrix_key_ops(modulus: int, dim: int, projective: bool):
    n = modulus
    if dim == 2:

        def mul_key(a, b):
            a0, a1, a2, a3 = a
            b0, b1, b2, b3 = b
            t = (
                (a0 * b0 + a1 * b2) % n,
                (a0 * b1 + a1 * b3) % n,
                (a2 * b0 + a3 * b2) % n,
                (a2 * b1 + a3 * b3) % n,
            )
            if projective:
                u = ((-t[0]) % n, (-t[1]) % n, (-t[2]) % n, (-t[3]) % n)
                return t if t <= u else u
            return t

        def inv_key(a):
            # valid for determinant-1 matrices, the only ones stored here
            a0, a1, a2, a3 = a
            t = (a3 % n, (-a1) % n, (-a2) % n, a0 % n)
            if projective:
                u = ((-t[0]) % n, (-t[1]) % n, (-t[2]) % n, (-t[3]) % n)
                return t if t <= u else u
            return t

    else:

        def mul_key(a, b):
            t = tuple(
                sum(a[3 * i + k] * b[3 * k + j] for k in range(3)) % n
                for i in range(3)
                for j in range(3)
            )
            return canonical_sign_key(t, n) if projective else t

        def inv_key(a):
            m = ModMatrix(n, (a[0:3], a[3:6], a[6:9]))
            t = m.inverse().flat()
            return canonical_sign_key(t, n) if projective else t

    return mul_key, inv_key


def matrix_group(
    gens: Sequence,
    projective: bool,
    max_size: int = DEFAULT_MAX_GROUP_SIZE,
    name: str = "",
) -> GroupTable:
    """Enumerate the matrix group generated by `gens` (ModMatrix or ProjMatrix)."""
    mats = []
    for g in gens:
        m = g.rep if isinstance(g, ProjMatrix) else g
        if m.det() != 1 % m.modulus:
            raise InputError("matrix group generators must have determinant 1")
        mats.append(m)
    if not mats:
        raise InputError("at least one generator required")
    modulus = mats[0].modulus
    dim = mats[0].dim
    if any(m.modulus != modulus or m.dim != dim for m in mats):
        raise InputError("generators must share modulus and dimension")
    mul_key, inv_key = _matrix_key_ops(modulus, dim, projective)
    identity = ModMatrix.identity(modulus, dim).flat()
    gen_keys = []
    for m in mats:
        k = canonical_sign_key(m.flat(), modulus) if projective else m.flat()
        gen_keys.append(k)
    elements = close_under_products(gen_keys, mul_key, identity, max_size)
    table = GroupTable(
        elements,
        mul_key,
        inv_key,
        identity,
        name=name,
        generators=tuple(sorted({elements.index(k) for k in gen_keys})),
    )
    table.modulus = modulus
    table.dim = dim
    table.projective = projective
    return table


def generate_group(gens: Sequence[ProjMatrix], max_size: int = DEFAULT_MAX_GROUP_SIZE) -> GroupTable:
    """Closure of projective determinant-1 matrices (the default group builder)."""
    return matrix_group(gens, projective=True, max_size=max_size)


def _sl2_gen_matrices(modulus: int):
    t = ModMatrix(modulus, ((1, 1), (0, 1)))
    l = ModMatrix(modulus, ((1, 0), (1, 1)))
    return [t, l]


@lru_cache(maxsize=None)
def sl2(modulus: int, max_size: int = DEFAULT_MAX_GROUP_SIZE) -> GroupTable:
    """SL(2, Z/k) for prime k, enumerated from the two elementary matrices."""
    if not is_prime(modulus):
        raise InputError(f"sl2 expects a prime modulus, got {modulus}")
    table = matrix_group(
        _sl2_gen_matrices(modulus), projective=False, max_size=max_size, name=f"SL(2,Z/{modulus})"
    )
    expected = modulus * (modulus * modulus - 1)
    if len(table) != expected:
        raise InputError(f"SL(2,Z/{modulus}) closure has {len(table)} != {expected} elements")
    return table


@lru_cache(maxsize=None)
def psl2(modulus: int, max_size: int = DEFAULT_MAX_GROUP_SIZE) -> GroupTable:
    """PSL(2, Z/p) for prime p, enumerated from the two elementary matrices."""
    if not is_prime(modulus):
        raise InputError(f"psl2 expects a prime modulus, got {modulus}")
    table = matrix_group(
        _sl2_gen_matrices(modulus), projective=True, max_size=max_size, name=f"PSL(2,Z/{modulus})"
    )
    expected = modulus * (modulus * modulus - 1) // (1 if modulus == 2 else 2)
    if len(table) != expected:
        raise InputError(f"PSL(2,Z/{modulus}) closure has {len(table)} != {expected} elements")
    return table


@lru_cache(maxsize=None)
def trivial_matrix_group(modulus: int) -> GroupTable:
    """The one-element matrix group {I} mod `modulus` (a product-group slot)."""
    identity = ModMatrix.identity(modulus, 2).flat()
    mul_key, inv_key = _matrix_key_ops(modulus, 2, projective=False)
    table = GroupTable([identity], mul_key, inv_key, identity, name=f"{{I}} mod {modulus}")
    table.modulus = modulus
    table.dim = 2
    table.projective = False
    return table


# ---------------------------------------------------------------------------
# Subgroups and cosets


class Subgroup:
    """Subgroup of a GroupTable, stored as sorted member indices."""

    def __init__(self, parent: GroupTable, members: Iterable[int], generators: Sequence[int] = ()):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        self.generators = tuple(generators) if generators else self.members
        if parent.identity not in set(self.members):
            raise InputError("subgroup must contain the identity")
        self._member_set = frozenset(self.members)
        self._member_keys = None

    @classmethod
    def from_generators(cls, parent: GroupTable, gen_indices: Sequence[int]) -> "Subgroup":
        seen = {parent.identity}
        frontier = [parent.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gen_indices:
                    y = parent.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return cls(parent, seen, generators=tuple(gen_indices))

    @classmethod
    def from_members(cls, parent: GroupTable, members: Iterable[int]) -> "Subgroup":
        sub = cls(parent, members)
        ms = sub._member_set
        for a in sub.members:
            for b in sub.members:
                if parent.mul(a, b) not in ms:
                    raise InputError("member set is not closed under multiplication")
        return sub

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, i: int) -> bool:
        return i in self._member_set

    def member_keys(self) -> frozenset:
        if self._member_keys is None:
            self._member_keys = frozenset(self.parent.key(i) for i in self.members)
        return self._member_keys

    def generator_keys(self) -> tuple:
        return tuple(self.parent.key(i) for i in self.generators)


@dataclass(frozen=True)
class CosetSpace:
    """Left cosets xH of a subgroup, labelled 0..k-1 in order of smallest member."""

    blocks: tuple
    reps: tuple
    block_of: tuple

    @property
    def size(self) -> int:
        return len(self.blocks)


def left_cosets(G: GroupTable, H: Subgroup) -> CosetSpace:
    if H.parent is not G:
        raise InputError("subgroup does not belong to this group")
    assigned = [-1] * len(G)
    blocks = []
    reps = []
    for x in range(len(G)):
        if assigned[x] >= 0:
            continue
        label = len(blocks)
        block = sorted(G.mul(x, h) for h in H.members)
        for y in block:
            assigned[y] = label
        blocks.append(tuple(block))
        reps.append(x)
    if len(blocks) * H.order != len(G):
        raise InputError("coset partition size mismatch")
    return CosetSpace(tuple(blocks), tuple(reps), tuple(assigned))


def right_cosets(G: GroupTable, H: Subgroup) -> CosetSpace:
    """Right cosets Hx, used to parametrize coset-constant coefficient vectors."""
    if H.parent is not G:
        raise InputError("subgroup does not belong to this group")
    assigned = [-1] * len(G)
    blocks = []
    reps = []
    for x in range(len(G)):
        if assigned[x] >= 0:
            continue
        label = len(blocks)
        block = sorted(G.mul(h, x) for h in H.members)
        for y in block:
            assigned[y] = label
        blocks.append(tuple(block))
        reps.append(x)
    return CosetSpace(tuple(blocks), tuple(reps), tuple(assigned))


@dataclass(frozen=True)
class CosetAction:
    """Permutation induced on left-coset labels by left translation."""

    element: int
    perm: tuple


def coset_action(G: GroupTable, H: Subgroup, g: int, space: Optional[CosetSpace] = None) -> CosetAction:
    if space is None:
        space = left_cosets(G, H)
    perm = tuple(space.block_of[G.mul(g, r)] for r in space.reps)
    return CosetAction(g, perm)


def perm_cycle_type(perm: Sequence[int]) -> tuple:
    """Cycle lengths of a permutation, longest first."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def cycle_type(action: CosetAction) -> tuple:
    return perm_cycle_type(action.perm)


def perm_orbit_count(perm: Sequence[int]) -> int:
    return len(perm_cycle_type(perm))


# ---------------------------------------------------------------------------
# Conjugacy classes


@dataclass(frozen=True)
class ConjClass:
    representative: int
    members: tuple

    @property
    def size(self) -> int:
        return len(self.members)


def conjugacy_classes(G: GroupTable, gens: Optional[Sequence[int]] = None) -> tuple:
    """Classes by orbit expansion under conjugation by a generating set."""
    if gens is None:
        gens = G.generator_indices()
    gen_invs = [G.inv(g) for g in gens]
    assigned = [False] * len(G)
    classes = []
    for x in range(len(G)):
        if assigned[x]:
            continue
        orbit = {x}
        frontier = [x]
        assigned[x] = True
        while frontier:
            nxt = []
            for y in frontier:
                for g, gi in zip(gens, gen_invs):
                    z = G.mul(G.mul(g, y), gi)
                    if z not in orbit:
                        orbit.add(z)
                        assigned[z] = True
                        nxt.append(z)
            frontier = nxt
        classes.append(ConjClass(x, tuple(sorted(orbit))))
    if sum(c.size for c in classes) != len(G):
        raise InputError("conjugacy classes do not partition the group")
    return tuple(classes)


def class_of_map(G: GroupTable, classes: Sequence[ConjClass]) -> list:
    out = [-1] * len(G)
    for ci, c in enumerate(classes):
        for m in c.members:
            out[m] = ci
    return out


def order_statistics(obj) -> dict:
    """Histogram {element order: count} for a GroupTable or Subgroup."""
    if isinstance(obj, Subgroup):
        G = obj.parent
        indices = obj.members
    else:
        G = obj
        indices = range(len(G))
    stats: dict = {}
    for i in indices:
        k = G.element_order(i)
        stats[k] = stats.get(k, 0) + 1
    return stats


def center_indices(G: GroupTable) -> tuple:
    gens = G.generator_indices()
    out = []
    for z in range(len(G)):
        if all(G.mul(z, g) == G.mul(g, z) for g in gens):
            out.append(z)
    return tuple(out)


def subgroup_center_size(G: GroupTable, members: Sequence[int]) -> int:
    ms = list(members)
    count = 0
    for z in ms:
        if all(G.mul(z, g) == G.mul(g, z) for g in ms):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Conjugator scan


def subgroups_conjugate(G: GroupTable, K1: Subgroup, K2: Subgroup) -> Optional[int]:
    """Smallest z (by index) with z K1 z^-1 = K2, or None after a full scan.

    The scan checks generators first (sufficient when |K1| = |K2|) and then
    verifies the full conjugated member set before accepting a witness.
    """
    if K1.parent is not G or K2.parent is not G:
        raise InputError("subgroups must belong to the scanned group")
    if K1.order != K2.order:
        return None
    mul_key = G.mul_key
    inv_key = G.inv_key
    k2_keys = K2.member_keys()
    gen_keys = K1.generator_keys()
    k1_keys = K1.member_keys()
    for zi, z in enumerate(G.elements):
        z_inv = inv_key(z)
        ok = True
        for g in gen_keys:
            if mul_key(mul_key(z, g), z_inv) not in k2_keys:
                ok = False
                break
        if ok:
            image = frozenset(mul_key(mul_key(z, k), z_inv) for k in k1_keys)
            if image == k2_keys:
                return zi
    return None


def element_conjugator(G: GroupTable, x_key, y_key) -> Optional[object]:
    """Smallest element key z (by table index) with z x z^-1 = y, or None.

    Deterministic: the table's discovery order fixes the scan order.
    """
    if x_key not in G.index or y_key not in G.index:
        raise InputError("both elements must belong to the scanned group")
    mul_key = G.mul_key
    inv_key = G.inv_key
    for z in G.elements:
        if mul_key(mul_key(z, x_key), inv_key(z)) == y_key:
            return z
    return None


# ---------------------------------------------------------------------------
# Direct products of enumerated tables (used by the small-group library)


def direct_product_tables(tables: Sequence[GroupTable], name: str = "") -> GroupTable:
    muls = [t.mul_key for t in tables]
    invs = [t.inv_key for t in tables]

    def mul_key(a, b):
        return tuple(m(x, y) for m, x, y in zip(muls, a, b))

    def inv_key(a):
        return tuple(f(x) for f, x in zip(invs, a))

    identity = tuple(t.identity_key for t in tables)
    elements = [tuple(keys) for keys in itertools.product(*[t.elements for t in tables])]
    return GroupTable(elements, mul_key, inv_key, identity, name=name or "x".join(t.name for t in tables))


# ---------------------------------------------------------------------------
# Sign-identified products of SL-type components


class ProductGroup:
    """Product of matrix groups with the global sign identified: P(A x B x ...).

    Elements are tuples of component keys modulo simultaneous negation.  The
    element list is only materialized on demand; order, membership, products,
    and conjugacy-class data all work from the component tables, which is what
    keeps the two-million-element congruence group affordable.
    """

    def __init__(self, components: Sequence[GroupTable], identify_center: bool = True):
        if not components:
            raise InputError("at least one component required")
        moduli = []
        for c in components:
            if not hasattr(c, "modulus"):
                raise InputError("product components must be matrix group tables")
            moduli.append(c.modulus)
        for a, b in itertools.combinations(moduli, 2):
            if _gcd(a, b) != 1:
                raise InputError(f"component moduli must be pairwise coprime, got {moduli}")
        self.components = list(components)
        self.identify_center = identify_center
        self.moduli = moduli
        self._neg_keys = [
            tuple((-x) % c.modulus for x in c.identity_key) for c in self.components
        ]
        # the global sign element; mod 2 components negate to themselves
        self.sign_key = tuple(
            self._component_neg(ci, c.identity_key) for ci, c in enumerate(self.components)
        )
        self.identity_key = self.canonical(tuple(c.identity_key for c in self.components))
        self.sign_is_trivial = self.sign_key == tuple(c.identity_key for c in self.components)
        divisor = 2 if identify_center and not self.sign_is_trivial else 1
        self.order = _prod(len(c) for c in self.components) // divisor
        self.name = "P(" + " x ".join(c.name for c in self.components) + ")"

    def _component_neg(self, ci: int, key):
        n = self.components[ci].modulus
        return tuple((-x) % n for x in key)

    def negate(self, t: tuple) -> tuple:
        return tuple(self._component_neg(ci, k) for ci, k in enumerate(t))

    def canonical(self, t: tuple) -> tuple:
        if not self.identify_center:
            return t
        u = self.negate(t)
        return t if t <= u else u

    def mul_key(self, a: tuple, b: tuple) -> tuple:
        return self.canonical(
            tuple(c.mul_key(x, y) for c, x, y in zip(self.components, a, b))
        )

    def inv_key(self, a: tuple) -> tuple:
        return self.canonical(tuple(c.inv_key(x) for c, x in zip(self.components, a)))

    def contains_key(self, t: tuple) -> bool:
        t = self.canonical(t)
        return all(k in c.index for c, k in zip(self.components, t))

    def iter_keys(self):
        for raw in itertools.product(*[c.elements for c in self.components]):
            if self.canonical(raw) == raw:
                yield raw

    def materialize(self, max_size: int = DEFAULT_MAX_GROUP_SIZE) -> GroupTable:
        if self.order > max_size:
            raise SizeLimitError(
                f"product group of order {self.order} exceeds cap {max_size}"
            )
        table = GroupTable(
            list(self.iter_keys()),
            self.mul_key,
            self.inv_key,
            self.identity_key,
            name=self.name,
        )
        table.product = self
        return table

    def fused_conjugacy_classes(self) -> list:
        """Conjugacy classes as fused tuples of component classes.

        Classes of the plain product are products of component classes; the
        global sign then either pairs two such products (sizes add up to one
        merged class of the original product size) or fixes one (its image
        halves).  Returns a list of (representative key, class size).
        """
        comp_classes = [conjugacy_classes(c) for c in self.components]
        comp_class_of = [class_of_map(c, cls) for c, cls in zip(self.components, comp_classes)]
        neg_maps = []
        for ci, (c, cls) in enumerate(zip(self.components, comp_classes)):
            nm = []
            for cc in cls:
                neg_key = self._component_neg(ci, c.key(cc.representative))
                nm.append(comp_class_of[ci][c.idx(neg_key)])
            neg_maps.append(nm)

        out = []
        ranges = [range(len(cls)) for cls in comp_classes]
        for combo in itertools.product(*ranges):
            if not self.identify_center or self.sign_is_trivial:
                partner = combo
            else:
                partner = tuple(nm[ci] for nm, ci in zip(neg_maps, combo))
            if partner < combo:
                continue  # merged with its partner, emitted once
            raw_size = _prod(comp_classes[k][combo[k]].size for k in range(len(combo)))
            if self.identify_center and not self.sign_is_trivial:
                size = raw_size // 2 if partner == combo else raw_size
            else:
                size = raw_size
            rep = self.canonical(
                tuple(
                    self.components[k].key(comp_classes[k][combo[k]].representative)
                    for k in range(len(combo))
                )
            )
            out.append((rep, size))
        total = sum(s for _, s in out)
        if total != self.order:
            raise InputError(f"fused class sizes sum to {total}, expected {self.order}")
        return out


def product_group(components: Sequence[GroupTable], identify_center: bool = True) -> ProductGroup:
    return ProductGroup(components, identify_center=identify_center)


def product_subgroup_keys(prod: ProductGroup, component_members: Sequence[Sequence]) -> frozenset:
    """Canonical keys of P(H_1 x ... x H_k) inside a sign-identified product."""
    out = set()
    for raw in itertools.product(*component_members):
        out.add(prod.canonical(tuple(raw)))
    return frozenset(out)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out
