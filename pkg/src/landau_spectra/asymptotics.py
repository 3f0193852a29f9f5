"""Small-sigma expansion of the stream eigenvalue that bifurcates from zero.

Writing ``L_1 = L_0 + s T1 + s^2 T2 + ...`` with ``T1 = i R`` and expanding the
eigenpair as ``h = d_a_psi + s eta_1 + s^2 eta_2 + ...``,
``mu = s mu_1 + s^2 mu_2 + ...`` with ``eta_k`` orthogonal to ``d_a_psi``:

* order 1, real part:       ``L_0 Re eta_1 - Re mu_1 d_a_psi = 0``
* order 1, imaginary part:  ``L_0 Im eta_1 - Im mu_1 d_a_psi = -R d_a_psi``
* order 2, real part:       ``L_0 Re eta_2 - Re mu_2 d_a_psi
  = -T2 d_a_psi + R Im eta_1 - Im mu_1 Im eta_1``

Each line is one bordered solve with the orthogonality constraint as the
extra row.
"""
from dataclasses import dataclass
import warnings

import numpy as np
import scipy.linalg as sla

from .eigensolve import spectrum_reduced
from .errors import SingularBorderedError
from .grid import Grid, Params
from .operators import (
    assemble_blocks,
    assemble_L,
    first_order_bracket,
    sampled_kernel,
)

#: Bordered matrices with reciprocal condition below this are rejected.  The
#: condition number of the discrete fourth-order operator grows like N^4 and
#: reaches about 1e15 at N = 3000, so the floor sits just under machine epsilon.
RCOND_FLOOR = 0.1 * np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class BorderedSolution:
    eta: np.ndarray
    mu: float
    residual_norm: float
    rhs_norm: float

    @property
    def relative_residual(self):
        return self.residual_norm / self.rhs_norm if self.rhs_norm else self.residual_norm


def _bordered_matrix(L0, border):
    n = L0.shape[0]
    M = np.zeros((n + 1, n + 1), dtype=np.result_type(L0, border))
    M[:n, :n] = L0
    M[:n, n] = -border
    M[n, :n] = border
    return M


def _block_matrix(params, border):
    A, B, C = (m.entries for m in assemble_blocks(params))
    n = A.shape[0]
    M = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.result_type(A, border))
    M[:n, :n] = np.eye(n)
    M[:n, n : 2 * n] = -A
    M[n : 2 * n, :n] = A + B
    M[n : 2 * n, n : 2 * n] = C
    M[n : 2 * n, 2 * n] = -border
    M[2 * n, n : 2 * n] = border
    return M


def _solve(M, b, params):
    anorm = np.abs(M).sum(axis=0).max()
    with warnings.catch_warnings():
        # exact singularity is reported through rcond below
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(M, check_finite=False)
    rcond = _rcond(lu, anorm)
    if not rcond > RCOND_FLOOR:
        raise SingularBorderedError("bordered system is singular", params, rcond)
    x = sla.lu_solve((lu, piv), b, check_finite=False)
    # one step of iterative refinement
    x = x + sla.lu_solve((lu, piv), b - M @ x, check_finite=False)
    return x


def _rcond(lu, anorm):
    gecon = sla.get_lapack_funcs("gecon", (lu,))
    rcond, info = gecon(lu, anorm, norm="1")
    return rcond if info == 0 else 0.0


def solve_bordered(L0, rhs, form="reduced", border=None):
    """Solve ``L0 eta - mu d_a_psi = rhs`` with ``<d_a_psi, eta> = 0``.

    Parameters
    ----------
    L0 : OperatorMatrix
        The n = 0 stream operator for some ``(a, N)``.
    rhs : array_like, shape (N,)
    form : {"reduced", "block"}
        ``"reduced"`` solves the ``(N+1)``-unknown system directly;
        ``"block"`` solves the ``(2N+1)``-unknown block system that also
        carries ``A_0 eta`` as unknowns.  Both give the same ``(eta, mu)``.
    border : array_like, optional
        Replaces the sampled ``d_a_psi`` as border vector.
    """
    params = L0.params
    if L0.kind != "L" or params.n_sigma:
        raise ValueError("solve_bordered expects the n = 0 stream operator")
    grid = Grid(params.N)
    border = sampled_kernel(params.a, grid) if border is None else np.asarray(border, float)
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != (params.N,):
        raise ValueError(f"rhs must have shape ({params.N},), got {rhs.shape}")
    n = params.N
    if form == "reduced":
        M = _bordered_matrix(L0.entries, border)
        b = np.append(rhs, 0.0)
        lo = 0
    elif form == "block":
        M = _block_matrix(params, border)
        b = np.concatenate([np.zeros(n), rhs, [0.0]])
        lo = n
    else:
        raise ValueError(f"unknown form {form!r}")
    if not np.any(border):
        raise SingularBorderedError("border vector is zero", params, 0.0)
    # equilibrate the border row and column against the operator block
    last = M.shape[0] - 1
    scale = np.abs(M[:last, :last]).max() / np.abs(border).max()
    M[:last, last] *= scale
    M[last, :last] *= scale
    x = _solve(M, b, params)
    eta, mu = x[lo : lo + n], x[last] * scale
    residual = L0.entries @ eta - mu * border - rhs
    return BorderedSolution(
        eta=eta,
        mu=float(mu),
        residual_norm=float(np.linalg.norm(residual)),
        rhs_norm=float(np.linalg.norm(rhs)),
    )


def _base(a, N):
    return Params(a=a, sigma=0.0, n=0, N=N)


def first_order_real(a, N, L0=None):
    """Diagnostic solve of the real first-order problem; should return (0, 0)."""
    L0 = L0 if L0 is not None else assemble_L(_base(a, N))
    return solve_bordered(L0, np.zeros(L0.params.N))


def first_order_rhs(a, N):
    """``-R d_a_psi``: the right-hand side of the imaginary first-order problem."""
    params = _base(a, N)
    grid = Grid(N)
    return -(first_order_bracket(params, grid) @ sampled_kernel(params.a, grid))


def first_order_imaginary(a, N, L0=None):
    """``(Im eta_1, Im mu_1)`` from the imaginary part of the first-order problem."""
    L0 = L0 if L0 is not None else assemble_L(_base(a, N))
    return solve_bordered(L0, first_order_rhs(a, N))


@dataclass(frozen=True, eq=False)
class SmallSigmaExpansion:
    """First- and second-order solutions of the small-sigma expansion."""

    params: Params
    first: BorderedSolution
    second: BorderedSolution

    @property
    def im_mu1(self):
        return self.first.mu

    @property
    def re_mu2(self):
        return self.second.mu


def second_order_rhs(a, N, first, closed_form=True):
    """Right-hand side of the real second-order problem.

    ``T2 d_a_psi`` is ``(2 A_0 + B_0) d_a_psi + (1 + K) d_a_psi``; with
    ``closed_form`` the first part uses its exact value
    ``-4 (a^2-1) sin(phi) / (a - cos(phi))^4`` instead of the matrices.
    """
    params = _base(a, N)
    grid = Grid(N)
    a = params.a
    w = a - grid.cos
    K = 2.0 * (a * a - 1.0) / w**2
    kernel = sampled_kernel(a, grid)
    if closed_form:
        two_a_plus_b = -4.0 * (a * a - 1.0) * grid.sin / w**4
    else:
        A, B, _ = assemble_blocks(params, grid)
        two_a_plus_b = (2.0 * A.entries + B.entries) @ kernel
    R = first_order_bracket(params, grid)
    return -two_a_plus_b - (1.0 + K) * kernel + R @ first.eta - first.mu * first.eta


def small_sigma_expansion(a, N, closed_form=True, form="reduced"):
    L0 = assemble_L(_base(a, N))
    first = solve_bordered(L0, first_order_rhs(a, N), form=form)
    rhs2 = second_order_rhs(a, N, first, closed_form=closed_form)
    second = solve_bordered(L0, rhs2, form=form)
    return SmallSigmaExpansion(L0.params, first, second)


def second_order_mu2(a, N, closed_form=True):
    """``Re mu_2``, the curvature of the real part of the bifurcating eigenvalue."""
    return small_sigma_expansion(a, N, closed_form=closed_form).re_mu2


def small_sigma_consistency(a, sigma, N):
    """``(min Re spec L_1, Re mu_2 * sigma^2)`` for side-by-side reporting."""
    if not 0.0 < sigma <= 0.1:
        raise ValueError("the expansion is only compared for 0 < sigma <= 0.1")
    report = spectrum_reduced(assemble_L(Params(a=a, sigma=sigma, n=1, N=N)), vectors=False)
    return report.min_real, second_order_mu2(a, N) * sigma**2
