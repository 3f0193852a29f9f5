"""Closed-form profiles of the Landau solution family.

Every function is vectorized over ``phi`` (or ``z``) and takes the Landau
parameter ``a > 1``.  Angles are polar angles in radians, ``0 <= phi <= pi``.
"""
import math

import numpy as np

#: Smallest admissible distance of ``a`` from 1; closer values lose all
#: precision in ``a - cos(phi)`` near the axis.
A_MARGIN = 1e-12


def check_a(a):
    """Validate the Landau parameter and return it as a float."""
    a = float(a)
    if not math.isfinite(a) or a <= 1.0 + A_MARGIN:
        raise ValueError(f"Landau parameter must satisfy a > 1, got a={a!r}")
    return a


def _check_phi(phi):
    phi = np.asarray(phi, dtype=float)
    if np.any(phi < 0.0) or np.any(phi > np.pi):
        raise ValueError("polar angle must lie in [0, pi]")
    return phi


def psi(a, phi):
    """Stream function ``2 sin(phi) / (a - cos(phi))``."""
    a, phi = check_a(a), _check_phi(phi)
    return 2.0 * np.sin(phi) / (a - np.cos(phi))


def d_a_psi(a, phi):
    """Derivative of :func:`psi` in ``a``; spans the kernel of the n = 0 stream operator."""
    a, phi = check_a(a), _check_phi(phi)
    return -2.0 * np.sin(phi) / (a - np.cos(phi)) ** 2


def u_tilde(a, phi):
    """Scaled velocity ``rho * U``.

    Returns
    -------
    u_tau, u_phi : ndarray
        Radial and polar components.
    """
    a, phi = check_a(a), _check_phi(phi)
    w = a - np.cos(phi)
    u_tau = 2.0 * ((a * a - 1.0) / w**2 - 1.0)
    u_phi = -2.0 * np.sin(phi) / w
    return u_tau, u_phi


def a_psi(a, phi):
    """``A_0`` applied to the stream function (the scaled vorticity)."""
    a, phi = check_a(a), _check_phi(phi)
    return 4.0 * (a * a - 1.0) * np.sin(phi) / (a - np.cos(phi)) ** 3


def _beta0_tail(a):
    # a + (a^2/2) ln((a-1)/(a+1)) = a - a^2 atanh(1/a) = -sum_k a^(1-2k) / (2k+1)
    x2 = 1.0 / (a * a)
    term, total, k = 1.0 / a, 0.0, 1
    while True:
        contrib = term / (2 * k + 1)
        total += contrib
        if contrib < 1e-18 * total:
            return -total
        term *= x2
        k += 1


def beta0(a):
    """Strength of the point force at the origin that drives ``U^a``.

    Strictly decreasing from ``+inf`` (a -> 1+) to ``0`` (a -> inf), with
    ``beta0(a) ~ 16 pi / a`` for large ``a``.  The cancelling pair
    ``a + (a^2/2) log((a-1)/(a+1))`` is summed as a series for ``a > 4``.
    """
    a = check_a(a)
    if a > 4.0:
        head = _beta0_tail(a)
    else:
        head = a + 0.5 * a * a * math.log((a - 1.0) / (a + 1.0))
    return 16.0 * math.pi * (head + 4.0 * a / (3.0 * (a * a - 1.0)))


def _check_z(z):
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) > 1.0):
        raise ValueError("z = cos(phi) must lie in [-1, 1]")
    return z


def f0(a, z):
    """``Psi * sin(phi)`` written in ``z = cos(phi)``."""
    a, z = check_a(a), _check_z(z)
    return 2.0 * (1.0 - z * z) / (a - z)


def h0(a, z):
    """Kernel profile in ``z``: ``sin(phi) * d_a_psi(phi)``."""
    a, z = check_a(a), _check_z(z)
    return -2.0 * (1.0 - z * z) / (a - z) ** 2


def h0_prime(a, z):
    """Analytic ``z``-derivative of :func:`h0`."""
    a, z = check_a(a), _check_z(z)
    w = a - z
    return 4.0 * z / w**2 - 4.0 * (1.0 - z * z) / w**3
