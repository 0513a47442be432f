"""Operator connections and means on Hermitian positive semidefinite matrices."""
from . import kernels
from .connections import (CATALOG, DEFAULT_EPS, Connection, EvalTrace, boundary_coefficients,
                          eval, eval_function_pd, eval_measure, harmonic_mean, make_named,
                          parallel_sum, transpose)
from .errors import (ConvergenceError, DegenerateInputError, DimensionError, EigenError,
                     EvaluationError, NonConvergenceError, NotPSDError, OpMeansError,
                     ParameterError, SingularMatrixError)
from .functions import (CustomFunction, FamilyFunction, RepresentingFunction, affine,
                        arithmetic, custom, geometric, harmonic, logarithmic,
                        negative_control, power_quasi)
from .measures import (DiscreteMeasure, arithmetic_measure, geometric_measure,
                       harmonic_measure, quadrature_measure)
from .psd import (DEFAULT_TOL, Tolerance, inv_pd, loewner_leq, matrix_from_json,
                  matrix_function, matrix_to_json, regularize, spectral, sqrt_psd,
                  symmetrize)
from .scalar import (ScalarConnection, induced_eval, induced_of, lift_to_operator,
                     representing_from_scalar, scalar_chain_check)

__version__ = "0.1.0"
