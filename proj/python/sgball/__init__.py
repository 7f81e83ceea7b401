"""Spectral-Galerkin solver for the simply supported biharmonic problem on the unit ball."""

import json

from ._sgball import (
    DomainError,
    InvalidArgument,
    NumericalError,
    gauss_jacobi,
    index_set,
    jacobi,
    solve,
    space_dimension,
    stiffness_lambda,
)
from . import _sgball

__all__ = [
    "DomainError",
    "InvalidArgument",
    "NumericalError",
    "basis_check",
    "convergence",
    "gauss_jacobi",
    "index_set",
    "jacobi",
    "solve",
    "space_dimension",
    "stiffness_lambda",
]


def convergence(case, degrees, threads=0):
    """Error table as a dict with the same schema as `sgball convergence --format json`."""
    return json.loads(_sgball._convergence_json(str(case), list(degrees), threads))


def basis_check(degree):
    return json.loads(_sgball._basis_check_json(degree))
