"""Positivity and weighted symmetry of the swirl operator.

The swirl operator ``M_n`` is paired with itself in the weighted space
``X_0^a`` whose inner product is

    <g, f> = sum_k g_k conj(f_k) (a - cos(phi_k))^2 sin(phi_k) delta

(rectangle rule on the interior nodes).  Integrating by parts gives

    Re <M_n g, g> = int |d(g sin)|^2 (a - cos)^2 / sin + (n sigma)^2 int |g|^2 (a - cos)^2 sin

which is positive for every nonzero ``g``, so ``M_n`` has neither zero nor
purely imaginary eigenvalues.
"""
import csv
from dataclasses import dataclass

import numpy as np

from .eigensolve import spectrum_reduced
from .errors import TheoremViolation
from .grid import Grid, Params
from .operators import _d1, assemble_M

#: Largest ``k`` in the ``sin(k phi)`` modes that make up random test vectors.
MAX_TEST_MODE = 6


@dataclass(frozen=True)
class QuadFormResult:
    """Real and imaginary parts of ``<M_n g, g>`` in the ``X_0^a`` quadrature.

    ``re_part`` is evaluated from the integrated-by-parts sum, which is
    nonnegative by construction; ``im_part`` comes from the direct pairing.
    """

    re_part: float
    im_part: float
    params: Params


@dataclass(frozen=True)
class SweepRow:
    a: float
    sigma: float
    n: int
    min_real: float
    min_abs: float


def _check_vector(g, N):
    g = np.asarray(g)
    if g.shape != (N,):
        raise ValueError(f"test vector must have shape ({N},), got {g.shape}")
    return g


def x0a_norm_sq(g, a, grid):
    """``sum |g|^2 (a - cos)^2 sin delta``."""
    g = _check_vector(g, grid.N)
    w = a - grid.cos
    return float(np.sum(np.abs(g) ** 2 * w * w * grid.sin) * grid.delta)


def x0a_pairing(u, v, a, grid):
    """``sum u conj(v) (a - cos)^2 sin delta``."""
    w = a - grid.cos
    return complex(np.sum(u * np.conj(v) * w * w * grid.sin) * grid.delta)


def m_quadratic_form(g, params, grid=None):
    """Quadratic form of ``M_n`` at ``g`` in the ``X_0^a`` quadrature.

    Parameters
    ----------
    g : array_like, shape (N,)
        Interior samples; Dirichlet data at both poles is implied.
    params : Params
    grid : Grid, optional

    Returns
    -------
    QuadFormResult
    """
    grid = Grid.from_params(params) if grid is None else grid
    g = _check_vector(g, grid.N).astype(complex)
    w2 = (params.a - grid.cos) ** 2
    # diff1 on the zero-padded product g sin
    dgs = _d1(grid) @ (g * grid.sin)
    ns = params.n_sigma
    re_part = np.sum(np.abs(dgs) ** 2 * w2 / grid.sin) * grid.delta
    re_part += ns * ns * np.sum(np.abs(g) ** 2 * w2 * grid.sin) * grid.delta
    M = assemble_M(params, grid).entries
    im_part = x0a_pairing(M @ g, g, params.a, grid).imag
    return QuadFormResult(float(re_part), float(im_part), params)


def smooth_test_vector(grid, rng, complex_valued=True):
    """Random combination of ``sin(k phi)``, ``k <= 6``, sampled on the grid."""
    k = np.arange(1, MAX_TEST_MODE + 1)
    coef = rng.standard_normal(MAX_TEST_MODE)
    if complex_valued:
        coef = coef + 1j * rng.standard_normal(MAX_TEST_MODE)
    return np.sin(np.outer(grid.nodes, k)) @ coef


def _weight(omega, a, grid):
    if isinstance(omega, str):
        if omega == "landau":
            return (a - grid.cos) ** 2
        if omega == "unit":
            return np.ones(grid.N)
        raise ValueError(f"unknown weight kind {omega!r}")
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (grid.N,):
        raise ValueError(f"custom weight must have shape ({grid.N},), got {omega.shape}")
    return omega


def weight_symmetry_defect(omega, a, N, trials=10, seed=0):
    """Largest normalized asymmetry of ``M_0`` under the weighted pairing.

    With ``b[g, f] = sum (M_0 g) conj(f) omega sin delta`` this returns
    ``max |b[g, f] - conj(b[f, g])| / (|g| |f|)`` over ``trials`` random
    smooth pairs, where ``|g|^2 = sum |g|^2 omega sin delta`` uses the same
    weight.  The ratio is therefore invariant under scaling of ``omega``.

    Parameters
    ----------
    omega : {"landau", "unit"} or array_like
        ``"landau"`` is ``(a - cos)^2``, ``"unit"`` is ``1``; an array gives
        the weight at the interior nodes.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    params = Params(a=a, sigma=0.0, n=0, N=N)
    grid = Grid(N)
    weight = _weight(omega, params.a, grid) * grid.sin * grid.delta
    M = assemble_M(params, grid).entries
    rng = np.random.default_rng(seed)

    def norm(u):
        return np.sqrt(np.sum(np.abs(u) ** 2 * weight))

    worst = 0.0
    for _ in range(trials):
        g = smooth_test_vector(grid, rng)
        f = smooth_test_vector(grid, rng)
        bgf = np.sum((M @ g) * np.conj(f) * weight)
        bfg = np.sum((M @ f) * np.conj(g) * weight)
        worst = max(worst, abs(bgf - np.conj(bfg)) / (norm(g) * norm(f)))
    return float(worst)


def m_spectrum_positivity_sweep(a_list, sigma_list, n_list, N):
    """Minimum real part and modulus of ``spec M_n`` over a parameter grid.

    Raises
    ------
    TheoremViolation
        On the first tuple whose minimum real part or modulus is not
        strictly positive.
    """
    rows = []
    for a in a_list:
        for sigma in sigma_list:
            if not sigma > 0:
                raise ValueError(f"sigma must be positive, got {sigma!r}")
            for n in n_list:
                params = Params(a=a, sigma=sigma, n=n, N=N)
                values = spectrum_reduced(assemble_M(params), vectors=False).eigenvalues
                row = SweepRow(
                    params.a, params.sigma, params.n,
                    float(values.real.min()), float(np.abs(values).min()),
                )
                if not (row.min_real > 0 and row.min_abs > 0):
                    raise TheoremViolation(
                        f"swirl spectrum touches the closed left half-plane at {row}", row
                    )
                rows.append(row)
    return rows


def write_sweep_csv(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["a", "sigma", "n", "min_real", "min_abs"])
        for r in rows:
            writer.writerow([
                format(r.a, ".17g"), format(r.sigma, ".17g"), r.n,
                format(r.min_real, ".17g"), format(r.min_abs, ".17g"),
            ])
