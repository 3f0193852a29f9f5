"""Dense matrices for the Fourier-mode operators on the interior grid.

With ``w = a - cos(phi)`` and ``ns = n * sigma`` the discretized operators are

* ``A_n h = (ns^2 - i ns) h - h'' - cot(phi) h' + h / sin^2(phi)``
* ``B_n h = 2i ns ((a^2-1)/w^2 + 1) h - (2 sin(phi)/w) h' + V h``
* ``C_n h = -(12(a^2-1) sin(phi)/w^3) h' + 12(a^2-1)(i ns sin^2(phi) + 1 - a cos(phi))/w^4 h``
* ``E_n g = (i ns (U_tau + 2) + U_phi cot(phi)) g + U_phi g'``

and the stream / swirl operators are ``L_n = (A_n + B_n) A_n + C_n`` and
``M_n = A_n + E_n``.  Products are formed on the banded (sparse) factors and
densified afterwards.
"""
import csv
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import landau
from .grid import Grid, Params

KINDS = ("A", "B", "C", "E", "L", "M", "T1", "T2", "T3", "T4")


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """A dense ``N x N`` operator matrix tagged with its kind and parameters."""

    entries: np.ndarray
    kind: str
    params: Params

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        n = self.params.N
        if self.entries.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got {self.entries.shape}")

    @property
    def shape(self):
        return self.entries.shape

    @property
    def is_real(self):
        return not np.iscomplexobj(self.entries) or not np.any(self.entries.imag)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def to_csv(self, path):
        """Dump the nonzero entries as ``row,col,re,im`` quadruples."""
        rows, cols = np.nonzero(self.entries)
        vals = self.entries[rows, cols]
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["row", "col", "re", "im"])
            for r, c, v in zip(rows, cols, vals):
                v = complex(v)
                writer.writerow([r, c, format(v.real, ".17g"), format(v.imag, ".17g")])


def _grid(params, grid):
    if grid is None:
        return Grid.from_params(params)
    if grid.N != params.N:
        raise ValueError(f"grid has N={grid.N} but params have N={params.N}")
    return grid


def _d1(grid):
    h = 1.0 / (2.0 * grid.delta)
    one = np.ones(grid.N - 1)
    return sp.diags([-h * one, h * one], [-1, 1], format="csr")


def _d2(grid):
    h = 1.0 / grid.delta**2
    return sp.diags(
        [h * np.ones(grid.N - 1), -2.0 * h * np.ones(grid.N), h * np.ones(grid.N - 1)],
        [-1, 0, 1],
        format="csr",
    )


def _diag(values):
    return sp.diags(values, 0, format="csr")


def _dtype(params):
    return complex if params.n_sigma else float


class _Coefficients:
    """Coefficient samples shared by the assemblies of one (a, N)."""

    def __init__(self, a, grid):
        self.a = a
        s, c = grid.sin, grid.cos
        w = a - c
        a21 = a * a - 1.0
        self.w = w
        self.K = 2.0 * a21 / w**2
        self.V = 2.0 - (4.0 * a * a + 2.0 * a * c - 6.0) / w**2
        self.swirl_b = (a21 / w**2 + 1.0)
        self.adv = 2.0 * s / w
        self.c_d1 = 12.0 * a21 * s / w**3
        self.c_im = 12.0 * a21 * s**2 / w**4
        self.c_re = 12.0 * a21 * (1.0 - a * c) / w**4
        self.u_tau, self.u_phi = landau.u_tilde(a, grid.nodes)


def _sparse_A(params, grid, coef=None):
    ns = params.n_sigma
    shift = ns * ns - 1j * ns if ns else 0.0
    d = _diag(grid.inv_sin2 + shift)
    return (d - _d2(grid) - _diag(grid.cot) @ _d1(grid)).astype(_dtype(params))


def _sparse_B(params, grid, coef):
    ns = params.n_sigma
    diag = coef.V + (2j * ns * coef.swirl_b if ns else 0.0)
    return (_diag(diag) - _diag(coef.adv) @ _d1(grid)).astype(_dtype(params))


def _sparse_C(params, grid, coef):
    ns = params.n_sigma
    diag = coef.c_re + (1j * ns * coef.c_im if ns else 0.0)
    return (_diag(diag) - _diag(coef.c_d1) @ _d1(grid)).astype(_dtype(params))


def _sparse_E(params, grid, coef):
    ns = params.n_sigma
    diag = coef.u_phi * grid.cot + (1j * ns * (coef.u_tau + 2.0) if ns else 0.0)
    return (_diag(diag) + _diag(coef.u_phi) @ _d1(grid)).astype(_dtype(params))


def _wrap(mat, kind, params):
    return OperatorMatrix(mat.toarray(), kind, params)


def assemble_A(params, grid=None):
    grid = _grid(params, grid)
    return _wrap(_sparse_A(params, grid), "A", params)


def assemble_B(params, grid=None):
    grid = _grid(params, grid)
    return _wrap(_sparse_B(params, grid, _Coefficients(params.a, grid)), "B", params)


def assemble_C(params, grid=None):
    grid = _grid(params, grid)
    return _wrap(_sparse_C(params, grid, _Coefficients(params.a, grid)), "C", params)


def assemble_E(params, grid=None):
    grid = _grid(params, grid)
    return _wrap(_sparse_E(params, grid, _Coefficients(params.a, grid)), "E", params)


def assemble_blocks(params, grid=None):
    """Return ``(A_n, B_n, C_n)`` for the block (pencil) formulation."""
    grid = _grid(params, grid)
    coef = _Coefficients(params.a, grid)
    return (
        _wrap(_sparse_A(params, grid), "A", params),
        _wrap(_sparse_B(params, grid, coef), "B", params),
        _wrap(_sparse_C(params, grid, coef), "C", params),
    )


def assemble_L(params, grid=None):
    """Stream operator ``(A_n + B_n) A_n + C_n``."""
    grid = _grid(params, grid)
    coef = _Coefficients(params.a, grid)
    A = _sparse_A(params, grid)
    L = (A + _sparse_B(params, grid, coef)) @ A + _sparse_C(params, grid, coef)
    return _wrap(L, "L", params)


def assemble_M(params, grid=None):
    """Swirl operator ``A_n + E_n``."""
    grid = _grid(params, grid)
    coef = _Coefficients(params.a, grid)
    return _wrap(_sparse_A(params, grid) + _sparse_E(params, grid, coef), "M", params)


def assemble_T(params, grid=None):
    """Coefficients of ``L_1(a, s) - L_0(a) = s T1 + s^2 T2 + s^3 T3 + s^4 T4``.

    Only ``params.a`` and ``params.N`` are used.
    """
    base = params.replace(sigma=0.0, n=0)
    grid = _grid(base, grid)
    coef = _Coefficients(base.a, grid)
    A = _sparse_A(base, grid)
    B = _sparse_B(base, grid, coef)
    T1 = 1j * (_diag(coef.K) @ A - B + _diag(coef.c_im))
    T2 = 2.0 * A + B + _diag(1.0 + coef.K)
    T3 = _diag(1j * coef.K)
    T4 = sp.identity(grid.N, format="csr")
    return tuple(
        _wrap(T, kind, base) for T, kind in zip((T1, T2, T3, T4), ("T1", "T2", "T3", "T4"))
    )


def first_order_bracket(params, grid=None):
    """Real matrix ``R`` with ``T1 = i R``: ``K A_0 - B_0 + 12(a^2-1) sin^2/w^4``."""
    base = params.replace(sigma=0.0, n=0)
    grid = _grid(base, grid)
    coef = _Coefficients(base.a, grid)
    R = _diag(coef.K) @ _sparse_A(base, grid) - _sparse_B(base, grid, coef) + _diag(coef.c_im)
    return R.tocsr()


def sampled_kernel(a, grid):
    """``d_a_psi`` sampled on the interior nodes."""
    return landau.d_a_psi(a, grid.nodes)


def apply_tilde_L0(a, H):
    """Evaluate the ``z``-form of the n = 0 stream operator.

    ``H`` holds samples at ``z_k = cos(phi_k)`` on the interior grid with
    ``N = len(H)`` nodes.  The operator is applied in its factorized form
    ``d^3/dz^3 [ (1-z^2)^2/(a-z)^2 d/dz ( (a-z)^2/(1-z^2) H ) ]`` with
    second-order nonuniform three-point differences in every layer
    (one-sided at the two extreme nodes).  The result satisfies
    ``L_0 h = sin(phi) * tilde_L0(h sin(phi))`` up to truncation error.
    """
    a = landau.check_a(a)
    H = np.asarray(H)
    if H.ndim != 1 or H.size < 9:
        raise ValueError("need at least 9 nodes to nest four three-point differences")
    z = Grid(H.size).z
    one_minus = 1.0 - z * z
    k = (a - z) ** 2 / one_minus
    Q = one_minus**2 / (a - z) ** 2
    out = Q * np.gradient(k * H, z, edge_order=2)
    for _ in range(3):
        out = np.gradient(out, z, edge_order=2)
    return out


def kernel_residual(a, N, fraction=None):
    """``|L_0 d_a_psi|_inf / |d_a_psi|_inf`` on the whole grid or its central ``fraction``."""
    params = Params(a=a, sigma=0.0, n=0, N=N)
    grid = Grid(N)
    kernel = sampled_kernel(params.a, grid)
    residual = assemble_L(params, grid).entries @ kernel
    if fraction is not None:
        inner = grid.inner_slice(fraction)
        residual, kernel = residual[inner], kernel[inner]
    return float(np.abs(residual).max() / np.abs(kernel).max())
