import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landau_spectra import landau

a_values = st.floats(min_value=1.001, max_value=1e3)
angles = st.floats(min_value=0.0, max_value=math.pi)


def test_psi_values():
    assert landau.psi(2, 0.0) == 0.0
    assert landau.psi(2, np.pi / 2) == pytest.approx(1.0)
    assert landau.psi(1.5, np.pi) == pytest.approx(0.0, abs=1e-15)


def test_d_a_psi_values():
    assert landau.d_a_psi(2, np.pi / 2) == pytest.approx(-0.5)
    assert landau.d_a_psi(2, 0.0) == 0.0


@settings(max_examples=50, deadline=None)
@given(a=st.floats(min_value=1.01, max_value=100.0), phi=st.floats(min_value=0.05, max_value=3.09))
def test_d_a_psi_matches_central_difference(a, phi):
    h = 1e-6
    fd = (landau.psi(a + h, phi) - landau.psi(a - h, phi)) / (2 * h)
    assert landau.d_a_psi(a, phi) == pytest.approx(fd, rel=1e-8, abs=1e-12)


def test_u_tilde_values():
    assert landau.u_tilde(2, np.pi / 2) == pytest.approx((-0.5, -1.0))
    assert landau.u_tilde(2, 0.0) == pytest.approx((4.0, 0.0))


def test_u_tilde_vanishes_for_large_a():
    phi = np.linspace(0, np.pi, 37)
    u_tau, u_phi = landau.u_tilde(1e6, phi)
    assert np.abs(u_tau).max() < 1e-5
    assert np.abs(u_phi).max() < 1e-5


def test_a_psi_values():
    assert landau.a_psi(2, np.pi / 2) == pytest.approx(1.5)
    assert landau.a_psi(2, 0.0) == 0.0


def _beta0_mp(a):
    a = mpmath.mpf(a)
    return 16 * mpmath.pi * (a + a**2 / 2 * mpmath.log((a - 1) / (a + 1)) + 4 * a / (3 * (a**2 - 1)))


@pytest.mark.parametrize("a", [1.0001, 1.01, 1.5, 2.0, 3.999, 4.001, 10.0, 1e3, 1e4, 1e6])
def test_beta0_matches_high_precision(a):
    with mpmath.workdps(50):
        ref = float(_beta0_mp(a))
    assert landau.beta0(a) == pytest.approx(ref, rel=1e-12)


def test_beta0_large_a_asymptote():
    for a in (1e3, 1e4):
        assert landau.beta0(a) * a / (16 * math.pi) == pytest.approx(1.0, rel=2.0 / a**2 * 10)


def test_beta0_monotone_and_limits():
    a = np.geomspace(1.0 + 1e-6, 1e5, 400)
    values = np.array([landau.beta0(x) for x in a])
    assert np.all(np.diff(values) < 0)
    assert values[0] > 1e6
    assert values[-1] < 1e-3


@pytest.mark.parametrize("a", [1.0, 0.5, 1.0 + 1e-13, float("nan"), float("inf")])
def test_invalid_a_rejected(a):
    with pytest.raises(ValueError):
        landau.psi(a, 1.0)


def test_angle_out_of_range_rejected():
    with pytest.raises(ValueError):
        landau.psi(2, -0.1)
    with pytest.raises(ValueError):
        landau.h0(2, 1.5)


def test_z_profiles_vanish_at_poles():
    for z in (-1.0, 1.0):
        assert landau.f0(3, z) == 0.0
        assert landau.h0(3, z) == 0.0


@settings(max_examples=50, deadline=None)
@given(a=a_values, z=st.floats(min_value=-1.0, max_value=1.0))
def test_kernel_ode_residual(a, z):
    H, dH = landau.h0(a, z), landau.h0_prime(a, z)
    residual = (1 - z * z) * dH + 2 * z * H - landau.f0(a, z) * H
    scale = abs((1 - z * z) * dH) + abs(2 * z * H) + abs(landau.f0(a, z) * H) + 1e-300
    assert abs(residual) <= 1e-12 * scale + 1e-300


def test_h0_is_sin_times_kernel():
    rng = np.random.default_rng(1)
    phi = rng.uniform(0, np.pi, 100)
    for a in (1.01, 2.0, 50.0):
        np.testing.assert_allclose(
            landau.h0(a, np.cos(phi)), np.sin(phi) * landau.d_a_psi(a, phi), rtol=1e-12, atol=1e-15
        )


def test_h0_prime_matches_finite_difference():
    z = np.linspace(-0.9, 0.9, 19)
    h = 1e-6
    fd = (landau.h0(2.0, z + h) - landau.h0(2.0, z - h)) / (2 * h)
    np.testing.assert_allclose(landau.h0_prime(2.0, z), fd, rtol=1e-7, atol=1e-9)
