"""Exact arithmetic mod n: residues, 2x2/3x3 matrices, and +/- projective normal forms.

Everything here is immutable and hashable, and all arithmetic is exact integer
arithmetic (no floating point anywhere), so values are safe to share, compare,
and use as dictionary keys in the group-enumeration layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union


class InputError(ValueError):
    """Bad argument: mismatched moduli/dimensions or a violated precondition."""


class SingularMatrixError(InputError):
    """Matrix or scalar is not invertible modulo n."""


class SizeLimitError(RuntimeError):
    """An enumeration exceeded its configured size cap."""


class SearchExhaustedError(RuntimeError):
    """A bounded search ran out of candidates without finding a witness."""


def is_prime(n: int) -> bool:
    """Trial-division primality test; fine for the small moduli used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Residues


@dataclass(frozen=True)
class Residue:
    """An integer reduced mod `modulus`."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise InputError(f"modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other: Union["Residue", int]) -> "Residue":
        if isinstance(other, int):
            return Residue(other, self.modulus)
        if other.modulus != self.modulus:
            raise InputError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
        return other

    def __add__(self, other):
        o = self._coerce(other)
        return Residue(self.value + o.value, self.modulus)

    def __sub__(self, other):
        o = self._coerce(other)
        return Residue(self.value - o.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        return Residue(self.value * o.value, self.modulus)

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def inverse(self) -> "Residue":
        try:
            return Residue(pow(self.value, -1, self.modulus), self.modulus)
        except ValueError:
            raise SingularMatrixError(
                f"{self.value} is not invertible mod {self.modulus}"
            ) from None

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Residue(pow(self.value, k, self.modulus), self.modulus)

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self) -> int:
        return self.value


def sqrt_mod(a: Union[int, Residue], p: int) -> frozenset:
    """All square roots of a mod prime p, found by exhaustive scan.

    The moduli in this project are tiny, so the scan is both the implementation
    and its own certificate of completeness.  Raises InputError for composite p.
    """
    if not is_prime(p):
        raise InputError(f"sqrt_mod requires a prime modulus, got {p}")
    a = int(a) % p
    return frozenset(Residue(x, p) for x in range(p) if (x * x) % p == a)


def smallest_sqrt(a: Union[int, Residue], p: int):
    """Smallest nonnegative square root of a mod p, or None."""
    roots = sorted(r.value for r in sqrt_mod(a, p))
    return Residue(roots[0], p) if roots else None


def is_quadratic_residue(a: int, p: int) -> bool:
    """Euler's criterion.  Zero counts as a square."""
    if not is_prime(p):
        raise InputError(f"prime modulus required, got {p}")
    a %= p
    if a == 0:
        return True
    if p == 2:
        return True
    return pow(a, (p - 1) // 2, p) == 1


def smallest_nonresidue(p: int) -> int:
    """Smallest positive quadratic non-residue mod an odd prime p."""
    for a in range(2, p):
        if not is_quadratic_residue(a, p):
            return a
    raise InputError(f"no quadratic non-residue mod {p}")


# ---------------------------------------------------------------------------
# Matrices mod n


def _reduced_rows(modulus: int, rows: Iterable[Iterable[int]]):
    out = tuple(tuple(int(x) % modulus for x in row) for row in rows)
    dim = len(out)
    if dim not in (2, 3):
        raise InputError(f"only 2x2 and 3x3 matrices are supported, got dim {dim}")
    for row in out:
        if len(row) != dim:
            raise InputError("matrix rows must form a square matrix")
    return out


@dataclass(frozen=True)
class ModMatrix:
    """Square matrix (dim 2 or 3) over Z/n with exact integer entries."""

    modulus: int
    rows: tuple

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise InputError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "rows", _reduced_rows(self.modulus, self.rows))

    @classmethod
    def identity(cls, modulus: int, dim: int) -> "ModMatrix":
        return cls(modulus, tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _check_compatible(self, other: "ModMatrix") -> None:
        if not isinstance(other, ModMatrix):
            raise InputError(f"expected ModMatrix, got {type(other).__name__}")
        if self.modulus != other.modulus or self.dim != other.dim:
            raise InputError(
                f"incompatible matrices: mod {self.modulus} dim {self.dim} "
                f"vs mod {other.modulus} dim {other.dim}"
            )

    def __mul__(self, other: "ModMatrix") -> "ModMatrix":
        self._check_compatible(other)
        n, d = self.modulus, self.dim
        a, b = self.rows, other.rows
        return ModMatrix(
            n,
            tuple(
                tuple(sum(a[i][k] * b[k][j] for k in range(d)) % n for j in range(d))
                for i in range(d)
            ),
        )

    def __add__(self, other: "ModMatrix") -> "ModMatrix":
        self._check_compatible(other)
        n = self.modulus
        return ModMatrix(
            n,
            tuple(
                tuple((x + y) % n for x, y in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
        )

    def __neg__(self) -> "ModMatrix":
        n = self.modulus
        return ModMatrix(n, tuple(tuple(-x % n for x in row) for row in self.rows))

    def scalar(self, s: int) -> "ModMatrix":
        n = self.modulus
        return ModMatrix(n, tuple(tuple(s * x % n for x in row) for row in self.rows))

    def transpose(self) -> "ModMatrix":
        d = self.dim
        return ModMatrix(self.modulus, tuple(tuple(self.rows[j][i] for j in range(d)) for i in range(d)))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim)) % self.modulus

    def det(self) -> int:
        r, n = self.rows, self.modulus
        if self.dim == 2:
            return (r[0][0] * r[1][1] - r[0][1] * r[1][0]) % n
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        ) % n

    def _adjugate(self) -> "ModMatrix":
        r, n = self.rows, self.modulus
        if self.dim == 2:
            return ModMatrix(n, ((r[1][1], -r[0][1]), (-r[1][0], r[0][0])))
        c = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                rs = [k for k in range(3) if k != i]
                cs = [k for k in range(3) if k != j]
                minor = r[rs[0]][cs[0]] * r[rs[1]][cs[1]] - r[rs[0]][cs[1]] * r[rs[1]][cs[0]]
                c[j][i] = (-1) ** (i + j) * minor
        return ModMatrix(n, tuple(tuple(row) for row in c))

    def inverse(self) -> "ModMatrix":
        d = self.det()
        try:
            dinv = pow(d, -1, self.modulus)
        except ValueError:
            raise SingularMatrixError(
                f"determinant {d} not invertible mod {self.modulus}"
            ) from None
        return self._adjugate().scalar(dinv)

    def char_poly(self) -> tuple:
        """Monic characteristic polynomial coefficients, highest degree first."""
        n = self.modulus
        t = self.trace()
        d = self.det()
        if self.dim == 2:
            return (1, -t % n, d)
        r = self.rows
        m2 = (
            (r[0][0] * r[1][1] - r[0][1] * r[1][0])
            + (r[0][0] * r[2][2] - r[0][2] * r[2][0])
            + (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        ) % n
        return (1, -t % n, m2, -d % n)

    def __pow__(self, k: int) -> "ModMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = ModMatrix.identity(self.modulus, self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return self == ModMatrix.identity(self.modulus, self.dim)

    def flat(self) -> tuple:
        return tuple(x for row in self.rows for x in row)


def transpose_inverse(m: ModMatrix) -> ModMatrix:
    """(M^-1)^t.  An anti-automorphism applied twice over, hence an automorphism."""
    return m.inverse().transpose()


# ---------------------------------------------------------------------------
# Projective matrices (sign classes)


def _canonical_sign_rows(m: ModMatrix) -> ModMatrix:
    neg = -m
    return m if m.flat() <= neg.flat() else neg


@dataclass(frozen=True)
class ProjMatrix:
    """Sign class {M, -M} of a determinant-1 matrix, stored in canonical form.

    The canonical representative is the lexicographically smaller of the two
    row-major entry tuples, so equal sign classes compare equal as values.
    For odd dimension the identification {M, -M} is only meaningful mod 2,
    where -M = M; larger odd-dimension moduli are rejected.
    """

    rep: ModMatrix

    def __post_init__(self) -> None:
        m = self.rep
        if m.dim % 2 == 1 and m.modulus > 2:
            raise InputError("projective sign classes for odd dim require modulus 2")
        if m.det() != 1 % m.modulus:
            raise InputError(f"projective matrix must have determinant 1, got {m.det()}")
        object.__setattr__(self, "rep", _canonical_sign_rows(m))

    @classmethod
    def identity(cls, modulus: int, dim: int) -> "ProjMatrix":
        return cls(ModMatrix.identity(modulus, dim))

    @property
    def modulus(self) -> int:
        return self.rep.modulus

    @property
    def dim(self) -> int:
        return self.rep.dim

    def __mul__(self, other: "ProjMatrix") -> "ProjMatrix":
        return ProjMatrix(self.rep * other.rep)

    def inverse(self) -> "ProjMatrix":
        return ProjMatrix(self.rep.inverse())

    def __pow__(self, k: int) -> "ProjMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = ProjMatrix.identity(self.modulus, self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return self.rep.flat() == ModMatrix.identity(self.modulus, self.dim).flat()

    def trace_normalized(self) -> int:
        """Trace up to sign, normalized to min(t, n - t)."""
        t = self.rep.trace()
        return min(t, (-t) % self.modulus)

    def key(self) -> tuple:
        return self.rep.flat()


def psl_order(a: ProjMatrix, bound: int = 1_000_000) -> int:
    """Smallest k >= 1 with a^k projectively the identity."""
    acc = a
    for k in range(1, bound + 1):
        if acc.is_identity():
            return k
        acc = acc * a
    raise SearchExhaustedError(f"order not found within {bound} steps")


def canonical_sign_key(flat: tuple, modulus: int) -> tuple:
    """Lexicographically smaller of a flat entry tuple and its negation mod n."""
    neg = tuple((-x) % modulus for x in flat)
    return flat if flat <= neg else neg
