"""Eigenvalues and eigenfunctions of the Cauchy operator in the interval (-1, 1).

The operator ``|Delta|^{1/2}`` with zero exterior condition is represented in
cosine (even) and sine (odd) bases; matrix elements come from closed forms in
Si and Ci, and a dense symmetric eigensolver produces the spectrum.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .eigensolver import EigenPair, EigenSolveOptions, eigh, eigvals_only
from .errors import (
    CauchyWellError,
    ConvergenceError,
    DomainError,
    EigenSolverError,
    QuadratureError,
    SpectrumStructureError,
)
from .galerkin import GalerkinBlock, analytic_diagonal, assemble, element
from .operator import BasisIndex, Candidate, Parity, apply_basis, apply_oracle, trig_disproof_residual
from .pipeline import solve_spectrum
from .quadrature import QuadratureSpec
from .specfun import ci, si, si_ci_pair
from .spectrum import SpectrumReport, count_nodes, ground_state_approximant, merge, synthesize

__all__ = [
    "BACKEND",
    "BasisIndex",
    "Candidate",
    "CauchyWellError",
    "ConvergenceError",
    "DomainError",
    "EigenPair",
    "EigenSolveOptions",
    "EigenSolverError",
    "GalerkinBlock",
    "Parity",
    "QuadratureError",
    "QuadratureSpec",
    "SpectrumReport",
    "SpectrumStructureError",
    "analytic_diagonal",
    "apply_basis",
    "apply_oracle",
    "assemble",
    "ci",
    "count_nodes",
    "eigh",
    "eigvals_only",
    "element",
    "ground_state_approximant",
    "merge",
    "si",
    "si_ci_pair",
    "solve_spectrum",
    "synthesize",
    "trig_disproof_residual",
    "__version__",
]
