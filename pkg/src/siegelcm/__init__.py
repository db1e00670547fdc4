"""Singular values of Siegel functions over imaginary quadratic fields.

Enumerates Galois conjugates of g_{(0,1/N)}(theta)^{-12N/gcd(6,N)} via
explicit matrix actions, certifies numerically that the non-identity
conjugates are strictly smaller than the base value, and produces the
integer polynomial whose roots are the conjugates.
"""

from .errors import (
    DegenerateValueError,
    EvaluationError,
    ExcludedFieldError,
    InputError,
    NotCongruentError,
    NotFundamentalError,
    NotNegativeError,
    PrecisionUnachievableError,
    SnapFailureError,
)
from .exactmath import (
    DEFAULT_GUARD,
    DEFAULT_PRECISION,
    BigComplex,
    BigRational,
    QuadIrrational,
    agreement_bits,
    bernoulli2,
    context,
    to_complex,
)
from .normal_basis import (
    ConjugateRecord,
    CriterionReport,
    IntPolynomial,
    check_criterion,
    conjugates,
    least_certifying_power,
    minimal_polynomial,
    siegel_ramachandra_invariant,
)
from .quadforms import (
    Discriminant,
    QuadForm,
    ThetaPoly,
    class_number,
    reduced_forms,
    theta,
    theta_min_poly,
    theta_of_form,
    validate_discriminant,
)
from .reciprocity import (
    ConjugateIndex,
    FracVector,
    MatrixModN,
    WElement,
    act_vector,
    beta_local,
    beta_modN,
    conjugate_indices,
    w_group,
)
from .siegel_eval import SiegelParams, power_exponent, siegel_g, siegel_power

__version__ = "0.1.0"

__all__ = [
    "BigComplex",
    "BigRational",
    "ConjugateIndex",
    "ConjugateRecord",
    "CriterionReport",
    "DEFAULT_GUARD",
    "DEFAULT_PRECISION",
    "DegenerateValueError",
    "Discriminant",
    "EvaluationError",
    "ExcludedFieldError",
    "FracVector",
    "InputError",
    "IntPolynomial",
    "MatrixModN",
    "NotCongruentError",
    "NotFundamentalError",
    "NotNegativeError",
    "PrecisionUnachievableError",
    "QuadForm",
    "QuadIrrational",
    "SiegelParams",
    "SnapFailureError",
    "ThetaPoly",
    "WElement",
    "act_vector",
    "agreement_bits",
    "bernoulli2",
    "beta_local",
    "beta_modN",
    "check_criterion",
    "class_number",
    "conjugate_indices",
    "conjugates",
    "context",
    "least_certifying_power",
    "minimal_polynomial",
    "power_exponent",
    "reduced_forms",
    "siegel_g",
    "siegel_power",
    "siegel_ramachandra_invariant",
    "theta",
    "theta_min_poly",
    "theta_of_form",
    "to_complex",
    "validate_discriminant",
    "w_group",
]
