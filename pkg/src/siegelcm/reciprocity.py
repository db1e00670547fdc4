"""Reciprocity matrices: local case tables, CRT lifts, and the W group.

Everything here lives in GL_2(Z/NZ) modulo +-identity.  A total,
deterministic choice of representative is needed for equality tests and
stable output: between M and -M (entries as least nonnegative residues) we
keep the lexicographically smaller entry tuple (m11, m12, m21, m22).  For
N = 2 the two candidates coincide and the rule is vacuously the identity.

Row vectors (v/N, w/N) are acted on from the right and identified modulo
Z^2 and modulo sign; the representative keeps the lexicographically
smaller of (v, w) and (-v, -w) as least nonnegative residues.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod

from .errors import ExcludedFieldError, InputError
from .quadforms import Discriminant, QuadForm, reduced_forms, theta_min_poly

IntMatrix = tuple[tuple[int, int], tuple[int, int]]


def _require_level(N: int) -> int:
    N = int(N)
    if N < 2:
        raise InputError(f"level must be >= 2, got {N}")
    return N


@dataclass(frozen=True)
class MatrixModN:
    """An invertible 2x2 matrix over Z/NZ, entries stored as residues in [0, N)."""

    m11: int
    m12: int
    m21: int
    m22: int
    modulus: int

    def __post_init__(self):
        _require_level(self.modulus)
        n = self.modulus
        if not all(0 <= e < n for e in self.entries()):
            raise ValueError(f"entries must be residues mod {n}: {self.entries()}")
        if gcd(self.det(), n) != 1:
            raise ValueError(f"matrix {self.entries()} is not invertible mod {n}")

    @classmethod
    def make(cls, m11, m12, m21, m22, modulus) -> "MatrixModN":
        n = _require_level(modulus)
        return cls(m11 % n, m12 % n, m21 % n, m22 % n, n)

    @classmethod
    def identity(cls, modulus) -> "MatrixModN":
        return cls.make(1, 0, 0, 1, modulus)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.m11, self.m12, self.m21, self.m22)

    def det(self) -> int:
        return (self.m11 * self.m22 - self.m12 * self.m21) % self.modulus

    def canonical(self) -> "MatrixModN":
        """The +-1 class representative: lexicographically smaller of M, -M."""
        neg = tuple((-e) % self.modulus for e in self.entries())
        return MatrixModN(*min(self.entries(), neg), self.modulus)

    def __mul__(self, other: "MatrixModN") -> "MatrixModN":
        if self.modulus != other.modulus:
            raise ValueError("matrix product needs matching moduli")
        n = self.modulus
        return MatrixModN(
            (self.m11 * other.m11 + self.m12 * other.m21) % n,
            (self.m11 * other.m12 + self.m12 * other.m22) % n,
            (self.m21 * other.m11 + self.m22 * other.m21) % n,
            (self.m21 * other.m12 + self.m22 * other.m22) % n,
            n,
        )


@dataclass(frozen=True)
class WElement:
    """A class of (t - Bs, -Cs; s, t) in GL_2(Z/NZ)/{+-1}, stored canonically.

    (t, s) are read back off the canonical representative's bottom row, so
    they determine the matrix and vice versa.
    """

    t: int
    s: int
    matrix: MatrixModN

    @classmethod
    def from_ts(cls, t: int, s: int, B: int, C: int, modulus: int) -> "WElement":
        m = MatrixModN.make(t - B * s, -C * s, s, t, modulus).canonical()
        return cls(t=m.m22, s=m.m21, matrix=m)

    def is_identity(self) -> bool:
        return self.matrix.entries() == (1, 0, 0, 1)


@dataclass(frozen=True)
class FracVector:
    """The class of the row vector (v/N, w/N) mod Z^2 and mod sign."""

    v: int
    w: int
    modulus: int

    def __post_init__(self):
        n = _require_level(self.modulus)
        if not (0 <= self.v < n and 0 <= self.w < n):
            raise ValueError(f"vector entries must be residues mod {n}")
        if self.v == 0 and self.w == 0:
            raise ValueError("vector must be nonzero mod Z^2")
        if (self.v, self.w) != min((self.v, self.w), ((-self.v) % n, (-self.w) % n)):
            raise ValueError(f"vector ({self.v}, {self.w}) is not sign-canonical")

    @classmethod
    def make(cls, v: int, w: int, modulus: int) -> "FracVector":
        n = _require_level(modulus)
        v, w = v % n, w % n
        return cls(*min((v, w), ((-v) % n, (-w) % n)), n)

    def as_tuple(self) -> tuple[int, int]:
        return (self.v, self.w)


@dataclass(frozen=True)
class ConjugateIndex:
    """One index (alpha, Q) of the conjugate enumeration."""

    alpha: WElement
    form: QuadForm


def beta_local(Q: QuadForm, d: Discriminant, p: int) -> IntMatrix:
    """The local matrix attached to (Q, p), by the three-way case table.

    The split is on p | a and p | c; primitivity of Q forbids p dividing
    all of a, b, c, so the table is total and its determinant (a, c, or
    a + b + c in the respective cases) is prime to p.  For d = 0 mod 4 the
    middle coefficient b is even, for d = 1 mod 4 it is odd, so the halved
    entries below are integers.
    """
    if Q.discriminant != d.d:
        raise ValueError(f"form {Q.as_tuple()} does not have discriminant {d.d}")
    a, b, c = Q.a, Q.b, Q.c
    if d.d % 4 == 0:
        if a % p:
            return ((a, b // 2), (0, 1))
        if c % p:
            return ((-b // 2, -c), (1, 0))
        return ((-a - b // 2, -c - b // 2), (1, -1))
    if a % p:
        return ((a, (b - 1) // 2), (0, 1))
    if c % p:
        return ((-(b + 1) // 2, -c), (1, 0))
    return ((-a - (b + 1) // 2, -c - (b - 1) // 2), (1, -1))


def _prime_powers(N: int) -> list[tuple[int, int]]:
    out, n, p = [], N, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, p**e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, n))
    return out


def _crt(residues: list[int], moduli: list[int]) -> int:
    m = prod(moduli)
    x = 0
    for r, mi in zip(residues, moduli):
        q = m // mi
        x += r * q * pow(q, -1, mi)
    return x % m


def beta_modN(Q: QuadForm, d: Discriminant, N: int) -> MatrixModN:
    """Glue the local matrices mod p^e along every p^e || N, canonically.

    Each entry is lifted by the Chinese remainder theorem from its
    residues mod the prime powers of N; the result is invertible mod N
    and returned as its +-1 class representative.
    """
    N = _require_level(N)
    pps = _prime_powers(N)
    locals_ = {p: beta_local(Q, d, p) for p, _ in pps}
    flat = []
    for i, j in itertools.product(range(2), range(2)):
        flat.append(_crt([locals_[p][i][j] % pe for p, pe in pps], [pe for _, pe in pps]))
    return MatrixModN.make(*flat, N).canonical()


def w_group(d: Discriminant, N: int) -> list[WElement]:
    """All classes of (t - Bs, -Cs; s, t) with unit determinant, mod +-1.

    Runs over (t, s) in (Z/N)^2 keeping det = t^2 - Bst + Cs^2 prime to N.
    Deterministic order: identity first, then lexicographic in the (t, s)
    of the canonical representative.  Rejects d in {-3, -4}, where the
    class count would overstate the Galois group.
    """
    N = _require_level(N)
    if d.d in (-3, -4):
        raise ExcludedFieldError(f"d = {d.d} needs extra units; index set unsupported")
    poly = theta_min_poly(d)
    B, C = poly.B, poly.C
    seen = {}
    for t in range(N):
        for s in range(N):
            if gcd(t * t - B * s * t + C * s * s, N) != 1:
                continue
            el = WElement.from_ts(t, s, B, C, N)
            seen[el.matrix.entries()] = el
    return sorted(seen.values(), key=lambda el: (not el.is_identity(), el.t, el.s))


def act_vector(vec: FracVector, M: MatrixModN) -> FracVector:
    """Right action (v, w) -> (v, w) M mod N, reduced to canonical form."""
    if vec.modulus != M.modulus:
        raise ValueError("vector and matrix moduli differ")
    v, w = vec.v, vec.w
    return FracVector.make(v * M.m11 + w * M.m21, v * M.m12 + w * M.m22, vec.modulus)


def conjugate_indices(d: Discriminant, N: int) -> list[ConjugateIndex]:
    """The full index list: every (alpha, Q), grouped by form.

    First entry is (identity, principal form); within each form the W
    classes come in w_group order.  The length is #W/{+-1} times h(d).
    """
    N = _require_level(N)
    group = w_group(d, N)
    return [
        ConjugateIndex(alpha=alpha, form=Q)
        for Q in reduced_forms(d)
        for alpha in group
    ]
