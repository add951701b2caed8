"""Sunada-condition verification and transplantation certificates.

Conventions (fixed once, used consistently across the package):

- Function spaces are functions on left cosets ``G/H`` — equivalently
  right-H-invariant functions on ``G`` — with the left translation action
  ``(rho(a) f)(x) = f(a^-1 x)``.
- A transplantation coefficient function ``c: G -> Z`` satisfies the star
  condition ``c(g h) = c(g)`` for all ``h`` in ``H2``, i.e. it is constant
  on the blocks ``g H2``.
- The induced operator is ``(T f)(x) = sum_g c(g) f(x g^-1)``.  It commutes
  formally with every left translation, hence with every Schreier adjacency
  and Laplacian operator; the substantive question is its invertibility,
  which is certified by an exact integer determinant.

Matrix entries, determinants and characteristic polynomials are exact
integers throughout; no floating point is used anywhere.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from .groups import (
    ConjClass,
    CosetSpace,
    GroupTable,
    Subgroup,
    conjugacy_classes,
    coset_action,
    left_cosets,
)
from .modp import InputError, SearchExhaustedError

TRANSPLANTATION_SCHEMA = "sunada-lab/transplantation/v1"


# ---------------------------------------------------------------------------
# Exact integer matrix helpers


def intmat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> tuple:
    n, k = len(A), len(A[0])
    if len(B) != k:
        raise InputError("matrix dimensions do not match")
    m = len(B[0])
    cols = list(zip(*B))
    return tuple(
        tuple(sum(row[i] * col[i] for i in range(k)) for col in cols) for row in A
    )


def intmat_identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def bareiss_determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant via fraction-free Gaussian elimination."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise InputError("determinant needs a square matrix")
    a = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot_row = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot_row is None:
                return 0
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def berkowitz_charpoly(M: Sequence[Sequence[int]]) -> tuple:
    """Characteristic polynomial det(xI - M), division-free.

    Returns coefficients in descending powers, leading coefficient 1.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise InputError("characteristic polynomial needs a square matrix")
    if n == 0:
        return (1,)
    rows = [tuple(map(int, row)) for row in M]
    poly = [1, -rows[0][0]]
    for k in range(1, n):
        a = rows[k][k]
        R = tuple(rows[k][j] for j in range(k))
        C = tuple(rows[j][k] for j in range(k))
        B = [tuple(rows[i][j] for j in range(k)) for i in range(k)]
        # Toeplitz column: 1, -a, -R C, -R B C, -R B^2 C, ...
        col = [1, -a]
        vec = C
        for _ in range(k - 1):
            col.append(-sum(R[i] * vec[i] for i in range(k)))
            vec = tuple(sum(B[i][j] * vec[j] for j in range(k)) for i in range(k))
        col.append(-sum(R[i] * vec[i] for i in range(k)))
        new_poly = [0] * (k + 2)
        for i, t in enumerate(col):
            for j, p in enumerate(poly):
                if i + j <= k + 1:
                    new_poly[i + j] += t * p
        poly = new_poly
    return tuple(poly)


# ---------------------------------------------------------------------------
# Sunada condition


class SunadaTriple:
    """A group with two subgroups subject to the class-counting condition."""

    def __init__(self, G: GroupTable, H1: Subgroup, H2: Subgroup) -> None:
        if H1.parent is not G or H2.parent is not G:
            raise InputError("subgroups must live in the given group")
        self.G = G
        self.H1 = H1
        self.H2 = H2
        self.classes: Tuple[ConjClass, ...] = conjugacy_classes(G)
        self.space1: CosetSpace = left_cosets(G, H1)
        self.space2: CosetSpace = left_cosets(G, H2)

    @property
    def index(self) -> int:
        return self.space1.size


def class_intersection_counts(
    classes: Sequence[ConjClass], H: Subgroup
) -> Tuple[int, ...]:
    members = H.member_keys()
    parent = H.parent
    return tuple(
        sum(1 for i in cls.members if parent.key(i) in members) for cls in classes
    )


def verify_sunada(G: GroupTable, H1: Subgroup, H2: Subgroup) -> Dict[str, object]:
    """Check that every conjugacy class meets H1 and H2 equally often."""
    classes = conjugacy_classes(G)
    counts1 = class_intersection_counts(classes, H1)
    counts2 = class_intersection_counts(classes, H2)
    rows = []
    violations = []
    for i, cls in enumerate(classes):
        ok = counts1[i] == counts2[i]
        rows.append(
            {
                "class_rep": G.key(cls.representative),
                "class_size": cls.size,
                "element_order": G.element_order(cls.representative),
                "h1_count": counts1[i],
                "h2_count": counts2[i],
                "ok": ok,
            }
        )
        if not ok:
            violations.append(i)
    return {
        "group": G.name,
        "group_order": len(G),
        "h1_order": H1.order,
        "h2_order": H2.order,
        "class_count": len(classes),
        "classes": rows,
        "violations": violations,
        "sunada": not violations,
    }


def permutation_character(
    G: GroupTable, H: Subgroup, classes: Optional[Sequence[ConjClass]] = None
) -> Tuple[int, ...]:
    """Fixed-coset count of a class representative, per conjugacy class."""
    if classes is None:
        classes = conjugacy_classes(G)
    space = left_cosets(G, H)
    out = []
    for cls in classes:
        perm = coset_action(G, H, cls.representative, space).perm
        out.append(sum(1 for i, img in enumerate(perm) if i == img))
    return tuple(out)


def characters_agree(G: GroupTable, H1: Subgroup, H2: Subgroup) -> bool:
    classes = conjugacy_classes(G)
    return permutation_character(G, H1, classes) == permutation_character(
        G, H2, classes
    )


def burnside_fixed_count(
    G: GroupTable, H: Subgroup, cls: ConjClass, index: int
) -> Optional[int]:
    """Fixed cosets predicted from class-intersection counts.

    fix(g) = |[g] ∩ H| · [G:H] / |[g]|; returns None when the quotient is
    not integral (cannot happen for true inputs, guards the oracle).
    """
    inter = class_intersection_counts([cls], H)[0]
    num = inter * index
    if num % cls.size:
        return None
    return num // cls.size


# ---------------------------------------------------------------------------
# Schreier graphs (left action on left cosets; symmetrized multigraph)


class SchreierGraph:
    """Finite coset graph with exact integer adjacency and Laplacian."""

    def __init__(
        self,
        adjacency: Sequence[Sequence[int]],
        gens: Sequence[int] = (),
        name: str = "",
    ) -> None:
        n = len(adjacency)
        if any(len(row) != n for row in adjacency):
            raise InputError("adjacency matrix must be square")
        self.adjacency = tuple(tuple(map(int, row)) for row in adjacency)
        self.gens = tuple(gens)
        self.name = name
        degrees = [sum(row) for row in self.adjacency]
        self.laplacian = tuple(
            tuple(
                (degrees[i] if i == j else 0) - self.adjacency[i][j]
                for j in range(n)
            )
            for i in range(n)
        )

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def degree_sequence(self) -> tuple:
        return tuple(sum(row) for row in self.adjacency)

    def is_regular(self) -> bool:
        degs = self.degree_sequence()
        return len(set(degs)) <= 1


def schreier_graph(G: GroupTable, H: Subgroup, gens: Sequence[int]) -> SchreierGraph:
    """Symmetrized Schreier graph on G/H: edges x -> g.x and x -> g^-1.x.

    Each generator occurrence contributes two directed edge families (itself
    and its inverse), so the graph is 2|gens|-regular and the adjacency
    matrix is symmetric, loops and multi-edges included.
    """
    space = left_cosets(G, H)
    n = space.size
    A = [[0] * n for _ in range(n)]
    for g in gens:
        for s in (g, G.inv(g)):
            perm = coset_action(G, H, s, space).perm
            for w, v in enumerate(perm):
                A[v][w] += 1
    return SchreierGraph(A, gens=gens, name=f"schreier({G.name}, index {n})")


def graph_from_adjacency(adjacency: Sequence[Sequence[int]], name: str = "") -> SchreierGraph:
    """Wrap a raw symmetric adjacency matrix (for controls and counterexamples)."""
    return SchreierGraph(adjacency, name=name)


# ---------------------------------------------------------------------------
# Transplantation


class TransplantationCertificate:
    """Coefficient function and induced matrix witnessing the isomorphism.

    ``c`` is stored as a full tuple over the group's element indices,
    constant on blocks g·H2; ``T`` maps functions on G/H1 to functions on
    G/H2 (shape [G:H2] × [G:H1]); ``det_witness`` is the exact nonzero
    integer determinant.
    """

    def __init__(
        self,
        triple: SunadaTriple,
        c: Sequence[int],
        T: Sequence[Sequence[int]],
        det_witness: int,
    ) -> None:
        self.triple = triple
        self.c = tuple(map(int, c))
        self.T = tuple(tuple(map(int, row)) for row in T)
        self.det_witness = int(det_witness)

    def to_json_dict(self, group_id: str = "") -> Dict[str, object]:
        return {
            "schema": TRANSPLANTATION_SCHEMA,
            "group_id": group_id or self.triple.G.name,
            "h1": self.triple.H1.order,
            "h2": self.triple.H2.order,
            "c": list(self.c),
            "T": [list(row) for row in self.T],
            "detT": self.det_witness,
        }


def verify_star(G: GroupTable, H2: Subgroup, c: Sequence[int]) -> bool:
    """c(g h) = c(g) for every h in H2 — c is constant on blocks g·H2."""
    if len(c) != len(G):
        raise InputError("c must assign a value to every group element")
    h2_keys = H2.member_keys()
    for gi, g_key in enumerate(G.elements):
        base = c[gi]
        for h in h2_keys:
            if c[G.idx(G.mul_key(g_key, h))] != base:
                return False
    return True


def expand_class_values(triple: SunadaTriple, class_values: Sequence[int]) -> tuple:
    """Expand per-block values on G/H2 into a full function on G."""
    space = triple.space2
    if len(class_values) != space.size:
        raise InputError("need one value per coset of G/H2")
    c = [0] * len(triple.G)
    for block_index, block in enumerate(space.blocks):
        for member in block:
            c[member] = int(class_values[block_index])
    return tuple(c)


def transplantation_matrix(triple: SunadaTriple, c: Sequence[int]) -> tuple:
    """Matrix of (T f)(x) = sum_g c(g) f(x g^-1) on coset indicator bases.

    Row block x·H2, column block v·H1:  T[x][v] = sum over the right coset
    H1 v^-1 x of c — exactly the weight with which the indicator of v·H1
    contributes at x·H2.  Both well-definedness statements (in the
    representative x and in the representative v) follow from the star
    condition and are exercised by tests.
    """
    G = triple.G
    if len(c) != len(G):
        raise InputError("c must assign a value to every group element")
    h1_members = [G.idx(k) for k in triple.H1.member_keys()]
    rows = []
    for x in triple.space2.reps:
        x_key = G.key(x)
        row = []
        for v in triple.space1.reps:
            v_inv_x = G.mul_key(G.inv_key(G.key(v)), x_key)
            total = 0
            for h in h1_members:
                g_key = G.mul_key(G.key(h), v_inv_x)
                total += c[G.idx(g_key)]
            row.append(total)
        rows.append(tuple(row))
    return tuple(rows)


def find_transplantation(
    G: GroupTable,
    H1: Subgroup,
    H2: Subgroup,
    coeff_bound: int = 1,
) -> TransplantationCertificate:
    """Lexicographic search for a star-compatible c with invertible T.

    Values are drawn from 0..coeff_bound per coset block of G/H2, in
    lexicographic order; the first assignment whose induced matrix has a
    nonzero exact determinant wins.  Deterministic by construction.
    """
    if coeff_bound < 1:
        raise InputError("coefficient bound must be at least 1")
    triple = SunadaTriple(G, H1, H2)
    report = verify_sunada(G, H1, H2)
    if not report["sunada"]:
        raise InputError("transplantation requires a verified Sunada triple")
    if triple.space1.size != triple.space2.size:
        raise InputError("subgroup indices differ; T cannot be square")
    n = triple.space2.size
    for assignment in itertools.product(range(coeff_bound + 1), repeat=n):
        if not any(assignment):
            continue
        c = expand_class_values(triple, assignment)
        T = transplantation_matrix(triple, c)
        det = bareiss_determinant(T)
        if det != 0:
            return TransplantationCertificate(triple, c, T, det)
    raise SearchExhaustedError(
        f"no invertible transplantation with values in 0..{coeff_bound}"
    )


def verify_intertwining(
    cert: TransplantationCertificate, X1: SchreierGraph, X2: SchreierGraph
) -> bool:
    """Exact check of T·A1 = A2·T and T·L1 = L2·T."""
    T = cert.T
    if len(T[0]) != X1.vertex_count or len(T) != X2.vertex_count:
        raise InputError("certificate and graph dimensions do not match")
    return intmat_mul(T, X1.adjacency) == intmat_mul(X2.adjacency, T) and intmat_mul(
        T, X1.laplacian
    ) == intmat_mul(X2.laplacian, T)


def charpoly_isospectral(X1: SchreierGraph, X2: SchreierGraph) -> bool:
    """Equality of exact characteristic polynomials (Laplacian and adjacency)."""
    if X1.vertex_count != X2.vertex_count:
        return False
    return berkowitz_charpoly(X1.laplacian) == berkowitz_charpoly(
        X2.laplacian
    ) and berkowitz_charpoly(X1.adjacency) == berkowitz_charpoly(X2.adjacency)
