"""Spectra of the stream and swirl operators.

Two routes are provided.  :func:`spectrum_reduced` solves the standard
``N x N`` problem ``L_n h = mu h`` (or ``M_n g = mu g``).
:func:`spectrum_generalized` solves the ``2N x 2N`` pencil

    [[I, -A_n], [A_n + B_n, C_n]] Y = mu [[0, 0], [0, I]] Y,   Y = (A_n h, h)

by QZ and discards the ``N`` infinite eigenvalues produced by the singular
mass matrix.  Both routes share the same finite spectrum.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import SolverError, StructuralError
from .grid import Grid, Params
from .operators import OperatorMatrix, sampled_kernel

#: Pairs (alpha, beta) with |beta| below this fraction of max |beta| are infinite.
INFINITE_BETA_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class SpectralReport:
    """Full eigenvalue list with the scalar diagnostics used by the tables."""

    eigenvalues: np.ndarray
    nearest_zero: complex
    nearest_zero_vector: np.ndarray = field(repr=False)
    form_used: str
    kind: str
    params: Params

    @property
    def min_real(self):
        return float(self.eigenvalues.real.min())

    @property
    def second_min_real(self):
        return second_min_real(self)

    @property
    def max_abs_imag(self):
        return float(np.abs(self.eigenvalues.imag).max())

    def kernel_cosines(self):
        """Cosines between the nearest-zero eigenvector and ``d_a_psi``.

        Returns ``(unweighted, sin_weighted)``; ``(None, None)`` for swirl reports.
        """
        if self.kind != "L" or self.params.n != 0:
            return None, None
        grid = Grid(self.params.N)
        ref = sampled_kernel(self.params.a, grid)
        v = self.nearest_zero_vector
        return cosine_angle(v, ref), cosine_angle(v, ref, weight=grid.sin)

    def to_dict(self):
        p = self.params
        cu, cw = self.kernel_cosines()
        return {
            "params": {"a": p.a, "sigma": p.sigma, "n": p.n, "N": p.N, "form": self.form_used},
            "operator": self.kind,
            "eigenvalues": [[float(z.real), float(z.imag)] for z in self.eigenvalues],
            "min_real": self.min_real,
            "second_min_real": self.second_min_real,
            "max_abs_imag": self.max_abs_imag,
            "nearest_zero": {
                "value": [float(self.nearest_zero.real), float(self.nearest_zero.imag)],
                "cos_angle_unweighted": cu,
                "cos_angle_sin_weighted": cw,
            },
        }


def _sorted(values):
    values = np.asarray(values, dtype=complex)
    return values[np.lexsort((values.imag, values.real))]


def _nearest_zero(values):
    # |lambda| first, then smaller |Im|
    idx = np.lexsort((np.abs(values.imag), np.abs(values)))
    return values[idx[0]]


def normalize_vector(v):
    """Unit Euclidean norm with the first significant component real positive."""
    v = np.asarray(v)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    v = v / norm
    mags = np.abs(v)
    first = np.flatnonzero(mags > 1e-8 * mags.max())[0]
    v = v * (np.conj(v[first]) / mags[first])
    if np.isrealobj(v) or not np.any(v.imag):
        return np.real(v).copy()
    return v


def inverse_iteration(matrix, shift, mass=None, steps=3):
    """Eigenvector of ``matrix`` (or the pencil ``(matrix, mass)``) for an eigenvalue near ``shift``."""
    matrix = np.asarray(matrix)
    n = matrix.shape[0]
    mass_op = np.eye(n) if mass is None else np.asarray(mass)
    real = np.isrealobj(matrix) and np.imag(shift) == 0
    shift = np.real(shift) if real else complex(shift)
    shifted = matrix - shift * mass_op
    scale = np.abs(matrix).max()
    bump = 0.0
    for _ in range(4):
        try:
            lu = sla.lu_factor(shifted + bump * scale * mass_op, check_finite=False)
        except (sla.LinAlgError, ValueError) as exc:
            raise SolverError(f"inverse iteration failed: {exc}") from exc
        if np.all(np.abs(np.diag(lu[0])) > 0):
            break
        bump = 1e-14 if bump == 0.0 else 10 * bump
    rng = np.random.default_rng(0)
    y = rng.standard_normal(n)
    if not real:
        y = y.astype(complex)
    for _ in range(steps):
        y = sla.lu_solve(lu, mass_op @ y, check_finite=False)
        y /= np.linalg.norm(y)
    return y


def spectrum_reduced(op, vectors=True):
    """All eigenvalues of an ``L`` or ``M`` matrix via the standard dense solver.

    Parameters
    ----------
    op : OperatorMatrix
        Assembled stream (``L``) or swirl (``M``) operator; ``A`` is accepted
        for oracle checks.
    vectors : bool
        Also compute the eigenvector of the eigenvalue nearest zero.
    """
    if op.kind not in ("L", "M", "A"):
        raise ValueError(f"spectrum_reduced expects an L, M or A matrix, got {op.kind!r}")
    try:
        values = sla.eigvals(op.entries, check_finite=False)
    except (sla.LinAlgError, ValueError) as exc:
        raise SolverError(f"eigensolver did not converge: {exc}", op.params) from exc
    if not np.all(np.isfinite(values)):
        raise SolverError("eigensolver returned non-finite values", op.params)
    values = _sorted(values)
    near = _nearest_zero(values)
    vec = normalize_vector(inverse_iteration(op.entries, near)) if vectors else np.empty(0)
    return SpectralReport(values, complex(near), vec, "reduced", op.kind, op.params)


def pencil(A, B, C):
    """The ``2N x 2N`` pair ``(P, Q)`` of the first-order block formulation."""
    A, B, C = (np.asarray(getattr(m, "entries", m)) for m in (A, B, C))
    n = A.shape[0]
    dtype = np.result_type(A, B, C)
    eye, zero = np.eye(n, dtype=dtype), np.zeros((n, n), dtype=dtype)
    P = np.block([[eye, -A], [A + B, C]])
    Q = np.block([[zero, zero], [zero, eye]])
    return P, Q


def spectrum_generalized(A, B, C, vectors=True):
    """Finite eigenvalues of the block pencil built from ``(A_n, B_n, C_n)``."""
    params = A.params
    for m in (B, C):
        if m.shape != A.shape:
            raise ValueError("block dimensions are inconsistent")
    n = A.shape[0]
    P, Q = pencil(A, B, C)
    try:
        alpha, beta = sla.eig(P, Q, right=False, homogeneous_eigvals=True, check_finite=False)
    except (sla.LinAlgError, ValueError) as exc:
        raise SolverError(f"QZ solve failed: {exc}", params) from exc
    finite = np.abs(beta) > INFINITE_BETA_RTOL * np.abs(beta).max()
    if finite.sum() != n:
        raise StructuralError(
            f"expected {n} finite eigenvalues, found {int(finite.sum())}", params
        )
    values = _sorted(alpha[finite] / beta[finite])
    near = _nearest_zero(values)
    if vectors:
        y = inverse_iteration(P, near, mass=Q)
        vec = normalize_vector(y[n:])
    else:
        vec = np.empty(0)
    return SpectralReport(values, complex(near), vec, "generalized", "L", params)


def second_min_real(report):
    """Second smallest real part, counting repeated values separately."""
    reals = np.sort(np.asarray(report.eigenvalues).real)
    if reals.size < 2:
        raise ValueError("need at least two eigenvalues")
    return float(reals[1])


def cosine_angle(v, w, weight=None):
    """``|<v, w>| / (|v| |w|)``, optionally with a diagonal weight."""
    v, w = np.asarray(v), np.asarray(w)
    if weight is None:
        weight = np.ones(v.shape)
    num = abs(np.vdot(w, weight * v))
    den = np.sqrt(np.vdot(v, weight * v).real * np.vdot(w, weight * w).real)
    if den == 0.0:
        raise ValueError("cosine of an angle with a zero vector is undefined")
    return float(min(num / den, 1.0))


def realness_audit(report, tol=1e-8):
    """True when every eigenvalue has ``|Im| <= tol``."""
    return report.max_abs_imag <= tol


def min_real_mode(op):
    """Eigenpair with the smallest real part.

    For the n = 0 stream operator this is the discrete image of the zero
    eigenvalue whenever the discretization pushes it below zero.
    """
    report = spectrum_reduced(op, vectors=False)
    lam = report.eigenvalues[0]
    return complex(lam), normalize_vector(inverse_iteration(op.entries, lam))


def kernel_mode_cosines(op):
    """``(lambda, unweighted cosine, sin-weighted cosine)`` of the min-real mode of ``L_0``.

    The discrete image of the zero eigenvalue is the mode with the smallest
    real part, which for very small ``a - 1`` is not the one of smallest modulus.
    """
    if op.kind != "L" or op.params.n_sigma:
        raise ValueError("kernel cosines are defined for the n = 0 stream operator")
    lam, vec = min_real_mode(op)
    grid = Grid(op.params.N)
    ref = sampled_kernel(op.params.a, grid)
    return lam, cosine_angle(vec, ref), cosine_angle(vec, ref, weight=grid.sin)
