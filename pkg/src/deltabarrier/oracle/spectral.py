"""Brute-force spectral reference: numerical k-integration of the eigenmode sum.

    psi(x, t) = 1/(2 pi) \\int dk phi(k) chi(k, x) exp(-i k^2 t)

The integrand carries a Gaussian factor exp(-A k^2 + B k + C) times a
rational function with simple poles. Each integral is moved onto the
steepest-descent line through the saddle, where the Gaussian factor becomes
exp(-u^2), and integrated there with adaptive quadrature. A pole lying on or
next to that line shifts it sideways by a fraction of the Gaussian width. Poles swept over
while moving the contour contribute their residues. The k contour passes
above every pole; for the plane-wave spectrum this is the ``+i0`` of the
pole at k0, and for the scattering amplitude it is the choice that
reproduces the initial state at t = 0.

No Faddeeva function is used here, so agreement with
:mod:`deltabarrier.analytic` is an independent check.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from ..errors import DomainError, QuadratureError
from ..model import BarrierSpec, Gaussian

__all__ = ["contour_integral", "spectral_reference", "spectral_reference_sine", "spectral_reference_gaussian"]

# exp(-U^2) is far below double precision beyond this
_U_MAX = 9.0
_DEFAULT_ETAS = (2e-7, 1e-7)
# a pole closer than this (in units of the Gaussian width) to the line moves the line
_POLE_CLEARANCE = 0.1
_OFFSETS = (0.0, 0.3, -0.3, 0.6, -0.6, 0.9, -0.9)


def _line_offset(pole_heights):
    """Parallel shift of the descent line keeping every pole at least _POLE_CLEARANCE away."""
    for offset in _OFFSETS:
        if all(abs(h - offset) >= _POLE_CLEARANCE for h in pole_heights):
            return offset
    raise QuadratureError("no pole-free integration line found", np.inf)


def contour_integral(A, B, C, g, poles, rtol=1e-11):
    """``1/(2 pi) * integral of g(k) exp(-A k^2 + B k + C) dk`` above all poles.

    Parameters
    ----------
    A, B, C : complex
        Quadratic exponent; ``Re A >= 0`` and ``A != 0``.
    g : callable
        Rational factor, vectorised over complex ``k``.
    poles : sequence of (pole, residue)
        Simple poles of ``g`` and the residues of ``g`` there.

    Returns
    -------
    value : complex
    error : float
        Absolute error estimate from the quadrature.
    """
    A = complex(A)
    if A == 0 or A.real < 0:
        raise DomainError("contour_integral needs Re A >= 0 and A != 0")
    root = np.sqrt(A)
    saddle = B / (2 * A)
    step = 1.0 / root

    u_poles = [(p - saddle) / step for p, _ in poles]
    offset = _line_offset([u.imag for u in u_poles])

    def integrand(u):
        w = u + 1j * offset
        return g(saddle + step * w) * np.exp(-w * w)

    breaks = sorted(u.real for u in u_poles if abs(u.real) < _U_MAX) or None

    probe = np.abs(integrand(np.linspace(-_U_MAX, _U_MAX, 513)))
    scale = float(np.max(probe)) if probe.size else 1.0
    atol = rtol * max(scale, 1e-300)

    parts = []
    err = 0.0
    for part in (np.real, np.imag):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegrationWarning)
            res = quad(
                lambda u: part(integrand(u)),
                -_U_MAX,
                _U_MAX,
                points=breaks,
                limit=2000,
                epsabs=atol,
                epsrel=rtol,
                full_output=1,
            )
        value, abserr, info = res[0], res[1], res[2]
        if len(res) > 3 and abserr > 1e3 * atol:
            raise QuadratureError(f"quadrature did not converge: {res[3].splitlines()[0]}", abserr)
        parts.append(value)
        err += abserr
    prefactor = np.exp(C + B * B / (4 * A)) * step / (2 * np.pi)
    total = prefactor * complex(parts[0], parts[1])
    err *= abs(prefactor)
    for (p, residue), u_p in zip(poles, u_poles):
        if u_p.imag > offset:
            total -= 1j * residue * np.exp(-A * p * p + B * p + C)
    return total, err


def _step_once(x, t, k0, coupling, position, eta):
    p0 = k0 - 1j * eta
    free, e1 = contour_integral(1j * t, 1j * x, 0.0, lambda k: 1j / (k - p0), [(p0, 1j)])
    if coupling == 0:
        return free, e1
    y = position + abs(x - position)
    c = 0.5j * coupling
    pa = c
    if abs(p0 - pa) < 1e-12 * max(1.0, abs(k0)):
        raise DomainError("spectral pole and scattering pole coincide")
    scat, e2 = contour_integral(
        1j * t,
        1j * y,
        0.0,
        lambda k: 1j * c / ((k - p0) * (k - pa)),
        [(p0, 1j * c / (p0 - pa)), (pa, 1j * c / (pa - p0))],
    )
    return free + scat, e1 + e2


def _coupling(barrier):
    return 0j if barrier.is_absent else barrier.coupling


def spectral_reference(x, t, k0, barrier: BarrierSpec, eta=None, tol=1e-9):
    """Step-front amplitude at a single (x, t) by direct k-integration.

    ``eta`` regularises the spectral pole as ``i/(k - k0 + i eta)``. By default
    two values ``eta = (2e-7, 1e-7) * k0`` are used and combined by one
    Richardson step to remove the O(eta) error. Pass ``eta=0`` for the exact
    ``+i0`` prescription, or a float for a single regularised evaluation.

    Raises
    ------
    QuadratureError
        If the quadrature error estimate exceeds ``tol`` relative to the result.
    """
    x, t, k0 = float(x), float(t), float(k0)
    if not t > 0:
        raise DomainError("spectral_reference needs t > 0")
    g = _coupling(barrier)
    if eta is None:
        etas = [f * abs(k0) for f in _DEFAULT_ETAS]
        v1, e1 = _step_once(x, t, k0, g, barrier.position, etas[0])
        v2, e2 = _step_once(x, t, k0, g, barrier.position, etas[1])
        value = v2 + (v2 - v1) * etas[1] / (etas[0] - etas[1])
        err = e1 + e2
    else:
        if eta < 0:
            raise DomainError("eta must be >= 0")
        value, err = _step_once(x, t, k0, g, barrier.position, float(eta))
    if err > tol * max(abs(value), 1e-300):
        raise QuadratureError("spectral reference not converged", err)
    return value


def spectral_reference_sine(x, t, k0, barrier: BarrierSpec, eta=None, tol=1e-9):
    """Sine-front amplitude from the antisymmetrised pair of spectral poles at +-k0."""
    plus = spectral_reference(x, t, k0, barrier, eta=eta, tol=tol)
    minus = spectral_reference(x, t, -k0, barrier, eta=eta, tol=tol)
    return (plus - minus) / 2j


def spectral_reference_gaussian(x, t, state: Gaussian, barrier: BarrierSpec, tol=1e-9):
    """Transmitted Gaussian amplitude (x > L) from the k-integral with transmission k/(k - i g/2)."""
    x, t = float(x), float(t)
    g = _coupling(barrier)
    if g != 0 and x <= barrier.position:
        raise DomainError("transmitted Gaussian reference needs x > L")
    sigma, k0 = state.sigma, state.k0
    A = sigma**2 / 4 + 1j * t
    B = sigma**2 * k0 / 2 + 1j * x
    C = -(sigma**2) * k0**2 / 4
    root2 = np.sqrt(2.0)
    if g == 0:
        value, err = contour_integral(A, B, C, lambda k: root2 + 0 * k, [])
    else:
        pa = 0.5j * g
        value, err = contour_integral(A, B, C, lambda k: root2 * k / (k - pa), [(pa, root2 * pa)])
    if err > tol * max(abs(value), 1e-300):
        raise QuadratureError("Gaussian spectral reference not converged", err)
    return value
