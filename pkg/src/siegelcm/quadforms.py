"""Fundamental discriminants, reduced binary quadratic forms, and CM points.

A form a X^2 + b X Y + c Y^2 of discriminant d = b^2 - 4ac < 0 is reduced
when -a < b <= a < c, or 0 <= b <= a = c.  Each class of primitive positive
definite forms contains exactly one reduced form, so enumerating them gives
the form class group as a set; its size is the class number h(d).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import NotCongruentError, NotFundamentalError, NotNegativeError
from .exactmath import QuadIrrational


def _squarefree(n: int) -> bool:
    n = abs(n)
    if n % 4 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Discriminant:
    """A fundamental discriminant of an imaginary quadratic field.

    Either d = 1 mod 4 and squarefree, or d = 4m with m = 2 or 3 mod 4
    and m squarefree.  Use :func:`validate_discriminant` to construct.
    """

    d: int

    def __post_init__(self):
        if self.d >= 0:
            raise NotNegativeError(f"discriminant must be negative, got {self.d}")
        r = self.d % 4
        if r not in (0, 1):
            raise NotCongruentError(f"discriminant must be 0 or 1 mod 4, got {self.d}")
        if r == 1:
            ok = _squarefree(self.d)
        else:
            m = self.d // 4
            ok = m % 4 in (2, 3) and _squarefree(m)
        if not ok:
            raise NotFundamentalError(f"{self.d} is not a fundamental discriminant")


def validate_discriminant(d: int) -> Discriminant:
    """Check d < 0, d = 0 or 1 mod 4, and the squarefree conditions."""
    return Discriminant(int(d))


@dataclass(frozen=True)
class QuadForm:
    """A reduced primitive positive definite binary quadratic form (a, b, c)."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"form must be positive definite: a = {self.a}")
        if self.discriminant >= 0:
            raise ValueError(f"form must have negative discriminant: {self.as_tuple()}")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise ValueError(f"form must be primitive: {self.as_tuple()}")
        reduced = (-self.a < self.b <= self.a < self.c) or (0 <= self.b <= self.a == self.c)
        if not reduced:
            raise ValueError(f"form is not reduced: {self.as_tuple()}")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class ThetaPoly:
    """Coefficients (B, C) of the minimal polynomial X^2 + BX + C of theta."""

    B: int
    C: int


def reduced_forms(d: Discriminant) -> list[QuadForm]:
    """All reduced forms of discriminant d, principal form first.

    The list is sorted by (a, b, c); since the principal form is the unique
    one with a = 1, it leads.  Reduction forces a <= sqrt(|d|/3), so for
    each a in that range we run b over (-a, a], solve 4ac = b^2 - d when it
    divides, and keep primitive solutions satisfying the reduction
    inequalities.  The list length is the class number h(d).
    """
    disc = d.d
    out = []
    for a in range(1, isqrt(-disc // 3) + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if a < c or (a == c and b >= 0):
                if gcd(gcd(a, b), c) == 1:
                    out.append(QuadForm(a, b, c))
    out.sort(key=QuadForm.as_tuple)
    return out


def class_number(d: Discriminant) -> int:
    return len(reduced_forms(d))


def theta(d: Discriminant) -> QuadIrrational:
    """The standard generator: sqrt(d)/2 for d = 0 mod 4, else (-1+sqrt(d))/2."""
    if d.d % 4 == 0:
        return QuadIrrational(p=0, q=2, d=d.d)
    return QuadIrrational(p=-1, q=2, d=d.d)


def theta_of_form(Q: QuadForm, d: Discriminant) -> QuadIrrational:
    """The CM point (-b + sqrt(d))/(2a) attached to a reduced form."""
    if Q.discriminant != d.d:
        raise ValueError(f"form {Q.as_tuple()} does not have discriminant {d.d}")
    return QuadIrrational(p=-Q.b, q=2 * Q.a, d=d.d)


def theta_min_poly(d: Discriminant) -> ThetaPoly:
    """(B, C) with theta^2 + B theta + C = 0: (0, -d/4) or (1, (1-d)/4)."""
    if d.d % 4 == 0:
        return ThetaPoly(B=0, C=-d.d // 4)
    return ThetaPoly(B=1, C=(1 - d.d) // 4)
