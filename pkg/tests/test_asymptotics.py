import numpy as np
import pytest
import scipy.linalg as sla

from landau_spectra.asymptotics import (
    RCOND_FLOOR,
    _solve,
    first_order_imaginary,
    first_order_real,
    first_order_rhs,
    second_order_mu2,
    second_order_rhs,
    small_sigma_consistency,
    small_sigma_expansion,
    solve_bordered,
)
from landau_spectra.errors import SingularBorderedError
from landau_spectra.grid import Grid, Params
from landau_spectra.operators import assemble_L, sampled_kernel


def _branch_oracle(a, N, sigmas=(0.004, 0.002)):
    """Richardson-extrapolated ``(Re mu_2, Im mu_1)`` from eigenvalues of ``L_1``."""
    l0 = sla.eigvals(assemble_L(Params(a, N=N)).entries)
    lam0 = l0[np.argmin(l0.real)].real
    est = []
    for s in sigmas:
        lam = sla.eigvals(assemble_L(Params(a, s, 1, N)).entries)
        lam = lam[np.argmin(np.abs(lam - lam0))]
        est.append(((lam.real - lam0) / s**2, lam.imag / s))
    (m2a, m1a), (m2b, m1b) = est
    return (4 * m2b - m2a) / 3, (4 * m1b - m1a) / 3


def test_homogeneous_rhs_gives_zero():
    sol = first_order_real(2.0, 80)
    assert sol.mu == 0.0
    assert not np.any(sol.eta)


def test_recovers_constructed_solution():
    a, N = 2.0, 120
    g = Grid(N)
    L0 = assemble_L(Params(a, N=N))
    kernel = sampled_kernel(a, g)
    w = np.sin(3 * g.nodes) + 0.3 * np.sin(g.nodes)
    w -= (w @ kernel) / (kernel @ kernel) * kernel
    sol = solve_bordered(L0, L0.entries @ w)
    np.testing.assert_allclose(sol.eta, w, rtol=1e-6, atol=1e-8 * np.abs(w).max())
    assert abs(sol.mu) < 1e-6
    assert sol.relative_residual <= 1e-8


@pytest.mark.parametrize("a", [1.1, 2.0, 10.0])
def test_first_order_certificates(a):
    N = 200
    sol = first_order_imaginary(a, N)
    kernel = sampled_kernel(a, Grid(N))
    assert abs(kernel @ sol.eta) <= 1e-10 * np.linalg.norm(kernel) * np.linalg.norm(sol.eta)
    assert sol.relative_residual <= 1e-8


def test_block_form_matches_reduced():
    a, N = 2.0, 160
    L0 = assemble_L(Params(a, N=N))
    rhs = first_order_rhs(a, N)
    red = solve_bordered(L0, rhs)
    blk = solve_bordered(L0, rhs, form="block")
    assert blk.mu == pytest.approx(red.mu, rel=1e-7)
    np.testing.assert_allclose(blk.eta, red.eta, rtol=1e-6, atol=1e-7 * np.abs(red.eta).max())


def test_expansion_forms_agree():
    a = small_sigma_expansion(2.0, 160, form="reduced").re_mu2
    b = small_sigma_expansion(2.0, 160, form="block").re_mu2
    assert a == pytest.approx(b, rel=1e-7)


def test_closed_form_and_matrix_rhs_agree_to_truncation():
    first = first_order_imaginary(2.0, 320)
    exact = second_order_rhs(2.0, 320, first, closed_form=True)
    matrix = second_order_rhs(2.0, 320, first, closed_form=False)
    inner = Grid(320).inner_slice()
    assert np.abs(exact - matrix)[inner].max() < 1e-3 * np.abs(exact).max()


@pytest.mark.parametrize("a", [1.2, 2.0, 10.0])
def test_expansion_matches_eigenvalue_branch(a):
    N = 160
    mu2, mu1 = _branch_oracle(a, N)
    exp = small_sigma_expansion(a, N)
    assert exp.im_mu1 == pytest.approx(mu1, rel=0.01)
    assert exp.re_mu2 == pytest.approx(mu2, rel=0.01)


def test_mu2_frozen_values():
    # frozen from the eigenvalue-branch oracle above (N = 160)
    assert second_order_mu2(2.0, 160) == pytest.approx(10.7907, rel=1e-3)
    assert second_order_mu2(10.0, 160) == pytest.approx(5.10302, rel=1e-3)


def test_mu2_grid_converged():
    assert second_order_mu2(2.0, 320) == pytest.approx(second_order_mu2(2.0, 640), rel=1e-3)


def test_large_a_first_order_decays():
    small = first_order_imaginary(1e2, 120)
    large = first_order_imaginary(1e4, 120)
    rhs_small = np.abs(first_order_rhs(1e2, 120)).max()
    rhs_large = np.abs(first_order_rhs(1e4, 120)).max()
    assert rhs_large < rhs_small
    assert np.abs(large.eta).max() <= np.abs(small.eta).max()


def test_rhs_shape_checked():
    L0 = assemble_L(Params(2, N=20))
    with pytest.raises(ValueError):
        solve_bordered(L0, np.zeros(19))
    with pytest.raises(ValueError):
        solve_bordered(L0, np.zeros(20), form="other")
    with pytest.raises(ValueError):
        solve_bordered(assemble_L(Params(2, 1, 1, 20)), np.zeros(20))


def test_singular_system_detected():
    M = np.ones((4, 4))
    with pytest.raises(SingularBorderedError) as info:
        _solve(M, np.ones(4), Params(2, N=3))
    assert info.value.rcond <= RCOND_FLOOR
    with pytest.raises(SingularBorderedError):
        solve_bordered(assemble_L(Params(2, N=20)), np.ones(20), border=np.zeros(20))


def test_residual_floor_grows_with_N():
    # the 1e-8 certificate holds for moderate N; beyond that eps * cond takes over
    small = first_order_imaginary(2.0, 100).relative_residual
    large = first_order_imaginary(2.0, 640).relative_residual
    assert small < 1e-10
    assert large < 1e-6


def test_small_sigma_consistency_bounds():
    with pytest.raises(ValueError):
        small_sigma_consistency(2.0, 0.5, 40)
    direct, predicted = small_sigma_consistency(10.0, 0.01, 160)
    assert 0.5 <= direct / predicted <= 2.0
