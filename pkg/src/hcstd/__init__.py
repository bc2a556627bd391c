"""Standard bases of zero-dimensional ideals in local polynomial rings,
computed with modular highest-corner truncation.

Quick start::

    from hcstd import *

    dom = DomainSpec(0)
    order = OrderSpec("ds", ("x", "y"))
    f = parse_polynomial("x3+y4+x2y2", dom, order)
    print(milnor(f))
"""

from .coeff import (MAX_CHAR, DomainSpec, Scalar, SpecializationFailure,
                    SpecializationPoint, clear_denominators, is_prime,
                    specialization_target, specialize_scalar)
from .corner import (INFINITE, WHOLE_RING, HighestCorner, NotFinite,
                     Staircase, highest_corner, is_zero_dimensional,
                     leading_ideal, minimalize_monomials, truncation_bound,
                     vdim)
from .mora import (ComputationTimeout, NonFinite, StandardBasis,
                   mora_weak_nf, reduce_basis, spoly, standard_basis)
from .parse import (ParseError, format_monomial, format_polynomial,
                    format_scalar, parse_polynomial)
from .ring import (DegreeBound, ExponentOverflow, IdealPresentation,
                   MonomialBound, NoBound, OrderSpec, Polynomial, Term,
                   jacobian_ideal, poly_derivative, truncate_poly)
from .semistd import (FIXED_PRIMES, AlgorithmConfig, AlgorithmReport,
                      AttemptRecord, ExhaustedRetries, NotZeroDimensional,
                      choose_specialization, exact_basis, hc_std, milnor,
                      specialize_ideal, tjurina)

__version__ = "0.1.0"

__all__ = [
    "AlgorithmConfig", "AlgorithmReport", "AttemptRecord",
    "ComputationTimeout", "DegreeBound", "DomainSpec", "ExhaustedRetries",
    "ExponentOverflow", "FIXED_PRIMES", "HighestCorner", "INFINITE",
    "IdealPresentation", "MAX_CHAR", "MonomialBound", "NoBound", "NonFinite",
    "NotFinite", "NotZeroDimensional", "OrderSpec", "ParseError",
    "Polynomial", "Scalar", "SpecializationFailure", "SpecializationPoint",
    "Staircase", "StandardBasis", "Term", "WHOLE_RING",
    "choose_specialization", "clear_denominators", "exact_basis",
    "format_monomial", "format_polynomial", "format_scalar", "hc_std",
    "highest_corner", "is_prime", "is_zero_dimensional", "jacobian_ideal",
    "leading_ideal", "milnor", "minimalize_monomials", "mora_weak_nf",
    "parse_polynomial", "poly_derivative", "reduce_basis",
    "specialization_target", "specialize_ideal", "specialize_scalar",
    "spoly", "standard_basis", "tjurina", "truncate_poly",
    "truncation_bound", "vdim",
]
