"""Spectra of the linearized operators around Landau solutions."""
from .asymptotics import BorderedSolution, second_order_mu2, small_sigma_expansion, solve_bordered
from .eigensolve import SpectralReport, spectrum_generalized, spectrum_reduced
from .errors import SingularBorderedError, SolverError, StructuralError, TheoremViolation
from .grid import Grid, Params, sigma_from_lambda
from .operators import (
    OperatorMatrix,
    assemble_A,
    assemble_B,
    assemble_blocks,
    assemble_C,
    assemble_E,
    assemble_L,
    assemble_M,
    assemble_T,
)
from .swirl import QuadFormResult, m_quadratic_form, m_spectrum_positivity_sweep, weight_symmetry_defect

__version__ = "0.1.0"
