"""Conjugate enumeration, the smallness certificate, and integer polynomials.

The base singular value is x = g_{(0,1/N)}(theta)^{-12N/gcd(6,N)}.  Its
conjugates are indexed by (alpha, Q) pairs; each one is evaluated as the
same kind of power at the CM point of Q, with the vector (0, 1) pushed
through alpha * beta_Q.  The certificate checks |x^gamma / x| < 1 for all
non-identity conjugates and reports the least exponent m whose m-th powers
clear the 1/#G threshold; the product over all conjugates of (X - x^gamma)
is then expanded and snapped to an integer polynomial.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateValueError, InputError, SnapFailureError
from .exactmath import (
    DEFAULT_GUARD,
    DEFAULT_PRECISION,
    BigComplex,
    QuadIrrational,
    context,
    to_complex,
)
from .quadforms import Discriminant, theta, theta_of_form
from .reciprocity import (
    ConjugateIndex,
    FracVector,
    act_vector,
    beta_modN,
    conjugate_indices,
)
from .siegel_eval import DEFAULT_MAX_TERMS, siegel_power

# Added to the observed maximum ratio before both certificate comparisons,
# so the certificate cannot pass (or m come out small) on rounding noise.
RATIO_SAFETY_MARGIN = Fraction(1, 2**64)


@dataclass(frozen=True)
class ConjugateRecord:
    """One conjugate: its index, transformed vector, CM point, and value."""

    index: ConjugateIndex
    vector: FracVector
    point: QuadIrrational
    value: BigComplex


@dataclass(frozen=True)
class CriterionReport:
    """Certificate data for one run.

    ``ratios`` are |x^gamma / x| per non-identity conjugate, in index
    order.  ``max_ratio`` is their maximum plus the 2^-64 safety margin;
    ``passes`` and ``m`` are decided from that margined value exactly, so
    passes iff max_ratio < 1, and when passing, m is the least positive
    integer with max_ratio^m <= 1/group_order.
    """

    ratios: tuple[float, ...]
    max_ratio: float
    passes: bool
    m: int | None
    group_order: int


@dataclass(frozen=True)
class IntPolynomial:
    """A snapped monic integer polynomial, coefficients degree-descending."""

    coefficients: tuple[int, ...]
    max_rounding_residual: float
    max_imag_residual: float

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def _exact_fraction(x) -> Fraction:
    """Exact value of an mpf (dyadic rational) as a Fraction."""
    sign, man, exp, _ = x._mpf_
    f = Fraction(int(man), 1) * Fraction(2) ** int(exp)
    return -f if sign else f


def conjugates(
    d: Discriminant,
    N: int,
    precision: int = DEFAULT_PRECISION,
    guard: int = DEFAULT_GUARD,
    threads: int = 1,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> list[ConjugateRecord]:
    """Evaluate every conjugate of the base value, identity record first.

    For each index (alpha, Q): the vector is (0, 1) alpha beta_Q in
    canonical form, the point is the CM point of Q, and the value is the
    -12N/gcd(6,N) power of g at that point, carried at ``precision`` bits
    (with ``guard`` extra working bits).  The principal form has beta = 1,
    so the first record is the base value itself with vector (0, 1).

    Evaluations are independent; ``threads`` > 1 runs them in a thread
    pool.  The output order is the index order either way.
    """
    indices = conjugate_indices(d, N)
    base = FracVector.make(0, 1, N)
    betas = {}
    work = []
    for idx in indices:
        Q = idx.form
        if Q not in betas:
            betas[Q] = beta_modN(Q, d, N)
        vector = act_vector(base, idx.alpha.matrix * betas[Q])
        work.append((idx, vector, theta_of_form(Q, d)))

    def evaluate(item):
        idx, vector, point = item
        tau = to_complex(point, precision + guard)
        value = siegel_power(
            vector.v, vector.w, tau, N, "-",
            precision=precision, guard=guard, max_terms=max_terms,
        )
        return ConjugateRecord(index=idx, vector=vector, point=point, value=value)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(evaluate, work))
    return [evaluate(item) for item in work]


def least_certifying_power(max_ratio, group_order: int) -> int:
    """Least m >= 1 with max_ratio^m <= 1/group_order.

    ``max_ratio`` may be a float, Fraction, or mpf below 1; it is converted
    to an exact rational, so boundary cases like 0.5^3 = 1/8 are decided
    without rounding.  Ratios so close to 1 that m exceeds 10^4 are decided
    by 128-bit logarithms instead (exact powers would be astronomically
    large there, and one-off minimality has no practical meaning).
    """
    if group_order < 1:
        raise InputError(f"group order must be positive, got {group_order}")
    if hasattr(max_ratio, "_mpf_"):
        ratio = _exact_fraction(max_ratio)
    else:
        ratio = Fraction(max_ratio)
    if ratio >= 1:
        raise InputError(f"max_ratio must be < 1, got {max_ratio}")
    if ratio <= 0 or group_order == 1:
        return 1
    bound = Fraction(1, group_order)
    ctx = context(128)
    log_ratio = ctx.log(ctx.mpf(ratio.numerator) / ratio.denominator)
    estimate = max(1, int(ctx.ceil(-ctx.log(group_order) / log_ratio)))
    if estimate > 10**4:
        return estimate
    m = estimate
    while ratio**m > bound:
        m += 1
    while m > 1 and ratio ** (m - 1) <= bound:
        m -= 1
    return m


def check_criterion(records: list[ConjugateRecord]) -> CriterionReport:
    """Certify |x^gamma / x| < 1 over the non-identity records.

    Ratios are moduli at working precision, relative to the identity
    record (which must come first).  The maximum gets the 2^-64 safety
    margin before the < 1 test and before the exponent search.
    """
    if not records:
        raise InputError("need at least one conjugate record")
    prec = max(r.value.precision for r in records)
    ctx = context(prec + 16)
    moduli = [abs(r.value) for r in records]
    if any(m == 0 for m in moduli):
        raise DegenerateValueError("a conjugate value underflowed to zero")
    base = moduli[0]
    ratios = [ctx.fdiv(m, base) for m in moduli[1:]]
    raw_max = max((_exact_fraction(r) for r in ratios), default=Fraction(0))
    margined = raw_max + RATIO_SAFETY_MARGIN
    passes = margined < 1
    m = least_certifying_power(margined, len(records)) if passes else None
    return CriterionReport(
        ratios=tuple(float(r) for r in ratios),
        max_ratio=float(margined),
        passes=passes,
        m=m,
        group_order=len(records),
    )


def minimal_polynomial(
    records: list[ConjugateRecord],
    snap_tolerance: float = 1e-10,
    power: int = 1,
) -> IntPolynomial:
    """Expand prod (X - value^power) over the records and snap to integers.

    Expansion runs 64 bits above the records' precision.  Every
    coefficient's |imag| and distance to the nearest integer are recorded;
    if either maximum exceeds ``snap_tolerance`` the snap is refused,
    since that indicates either insufficient working precision for the
    coefficient sizes at hand or genuinely non-integral coefficients.
    Callers should pass records from a run whose certificate passed.

    The default expands the polynomial of the conjugates themselves;
    ``power`` = m > 1 instead uses their m-th powers (the element the
    certificate's exponent refers to).  Coefficient sizes grow roughly
    m-fold in digits, so large m may need more working precision.
    """
    if not records:
        raise InputError("need at least one conjugate record")
    if power < 1:
        raise InputError(f"power must be >= 1, got {power}")
    prec = max(r.value.precision for r in records)
    ctx = context(prec + 64)
    coeffs = [ctx.mpc(1)]
    for rec in records:
        root = rec.value.to_mpc(ctx)
        if power != 1:
            root = ctx.power(root, power)
        nxt = coeffs + [ctx.mpc(0)]
        for k in range(len(coeffs)):
            nxt[k + 1] -= root * coeffs[k]
        coeffs = nxt
    snapped = []
    max_round = ctx.mpf(0)
    max_imag = ctx.mpf(0)
    for c in coeffs:
        nearest = ctx.nint(c.real)
        max_round = max(max_round, abs(c.real - nearest))
        max_imag = max(max_imag, abs(c.imag))
        snapped.append(int(nearest))
    if max_round > snap_tolerance or max_imag > snap_tolerance:
        raise SnapFailureError(
            f"coefficients are not within {snap_tolerance} of integers "
            f"(rounding residual {ctx.nstr(max_round, 6)}, imaginary residual "
            f"{ctx.nstr(max_imag, 6)}); raise the working precision if the "
            f"residuals look like rounding noise",
            max_rounding_residual=float(max_round),
            max_imag_residual=float(max_imag),
        )
    return IntPolynomial(
        coefficients=tuple(snapped),
        max_rounding_residual=float(max_round),
        max_imag_residual=float(max_imag),
    )


def siegel_ramachandra_invariant(
    d: Discriminant,
    N: int,
    precision: int = DEFAULT_PRECISION,
    guard: int = DEFAULT_GUARD,
) -> BigComplex:
    """The 12N-th power g_{(0,1/N)}(theta)^{12N} at the standard generator."""
    tau = to_complex(theta(d), precision + guard)
    return siegel_power(0, 1, tau, N, "+", precision=precision, guard=guard)
