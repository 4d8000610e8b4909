"""Generalized Bessel kernels of type A with an exact Jack-polynomial oracle.

The package computes the permutation-invariant kernel J_N(mu, lam) of two
zero-sum vectors by a recursion over the dimension, using Gauss-Jacobi
quadrature that absorbs the endpoint singularities of the interlacing
kernel, and exposes the Laplace densities of the kernel on orbit hulls.
An exact rational Jack-polynomial engine serves as the correctness oracle
for the quadrature machinery through the Okounkov-Olshanski branching
integral.
"""

__version__ = "0.1.0"

from .bessel import (
    BesselParams,
    BesselResult,
    DensityPoint,
    bessel_a1,
    bessel_eval,
    bessel_recursive,
    bessel_via_density,
    density_a2,
    density_general,
    density_mass,
    density_value,
    modified_bessel,
    support_predicate,
)
from .chamber import (
    ChamberPoint,
    Multiplicity,
    Partition,
    dominance_leq,
    in_convex_hull,
    interlace_check,
    partitions_of,
    project_zero_sum,
    sort_descending,
)
from .errors import (
    DegenerateInputError,
    DegenerateParameterError,
    EvaluationError,
    InternalConsistencyError,
    InvalidInputError,
    SeriesOverflowError,
    SingularEvaluationError,
)
from .jack import JackPolynomial, jack_construct, jack_eval, jack_eval_many
from .okounkov import OOReport, oo_rhs, pi_kernel, u_coeff, vandermonde, verify_oo
from .quadrature import Box, JacobiRule, gauss_jacobi, integrate_adaptive, integrate_box, map_to_interval
from .sympoly import SymPoly, from_monomial_coeffs, laplace_beltrami, monomial_symmetric, to_monomial_coeffs

__all__ = [
    "BesselParams", "BesselResult", "DensityPoint", "bessel_a1", "bessel_eval",
    "bessel_recursive", "bessel_via_density", "density_a2", "density_general",
    "density_mass", "density_value", "modified_bessel", "support_predicate",
    "ChamberPoint", "Multiplicity", "Partition", "dominance_leq", "in_convex_hull",
    "interlace_check", "partitions_of", "project_zero_sum", "sort_descending",
    "DegenerateInputError", "DegenerateParameterError", "EvaluationError",
    "InternalConsistencyError", "InvalidInputError", "SeriesOverflowError",
    "SingularEvaluationError",
    "JackPolynomial", "jack_construct", "jack_eval", "jack_eval_many",
    "OOReport", "oo_rhs", "pi_kernel", "u_coeff", "vandermonde", "verify_oo",
    "Box", "JacobiRule", "gauss_jacobi", "integrate_adaptive", "integrate_box",
    "map_to_interval",
    "SymPoly", "from_monomial_coeffs", "laplace_beltrami", "monomial_symmetric",
    "to_monomial_coeffs",
]
