"""Laguerre-Sobolev-type orthogonal polynomials with a mass point inside (0, inf).

Evaluation, connection coefficients, norms, kernels, the five-term
recurrence and large-degree diagnostics, at configurable precision.
"""

from .numerics import (
    ConsistencyError,
    ConvergenceError,
    DegreeOverflowError,
    DomainError,
    Precision,
    SingularityError,
)
from .sobolev import SobolevParams

__all__ = [
    "Precision",
    "SobolevParams",
    "DomainError",
    "DegreeOverflowError",
    "ConvergenceError",
    "ConsistencyError",
    "SingularityError",
]

__version__ = "0.1.0"
