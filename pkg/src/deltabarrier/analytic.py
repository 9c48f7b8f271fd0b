"""Closed-form time evolution past a delta barrier.

The building block is the free-front (Moshinsky) amplitude

    M(x, t; a) = 1/2 exp(i x^2 / 4t) w(sqrt(i t) (x/2t - a)),

which propagates theta(-x) exp(i a x) and, continued to complex ``a``,
handles the pole of the scattering amplitude. ``sqrt(i t)`` is taken on the
principal branch, i.e. ``exp(i pi/4) sqrt(t)`` for t > 0.

All functions broadcast over array arguments.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .model import (
    BarrierKind,
    BarrierSpec,
    Gaussian,
    InitialState,
    Provenance,
    SineFront,
    SpacetimeGrid,
    StepPlane,
    WaveField,
    auxiliary_y,
)
from .special import faddeeva

__all__ = [
    "moshinsky",
    "psi_step",
    "psi_step_imaginary",
    "psi_step_coupling",
    "scattered_step",
    "psi_sine",
    "psi_gaussian",
    "free_gaussian",
    "wavefunction",
    "density",
    "evaluate_field",
    "delta_density",
]

_SQRT_PI = np.sqrt(np.pi)
# below this separation the pole difference quotient switches to the derivative
_POLE_MERGE = 1e-7


def _require_positive_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)):
        raise DomainError("closed-form step/sine solutions need t > 0")
    return t


def moshinsky(x, t, a):
    """Free-front amplitude ``M(x, t; a)`` for real or complex ``a``."""
    x = np.asarray(x, dtype=float)
    t = _require_positive_time(t)
    root = np.exp(0.25j * np.pi) * np.sqrt(t)
    return 0.5 * np.exp(1j * x * x / (4 * t)) * faddeeva(root * (x / (2 * t) - a))


def _pole_quotient(y, t, k0, a):
    """(M(y,t;k0) - M(y,t;a)) / (k0 - a), continuous through k0 == a."""
    y, t, a = np.broadcast_arrays(np.asarray(y, float), np.asarray(t, float), np.asarray(a, complex))
    sep = k0 - a
    close = np.abs(sep) < _POLE_MERGE * max(1.0, abs(k0))
    out = np.empty(y.shape, dtype=complex)
    far = ~close
    if far.any():
        out[far] = (moshinsky(y[far], t[far], k0) - moshinsky(y[far], t[far], a[far])) / sep[far]
    if close.any():
        yc, tc = y[close], t[close]
        mid = 0.5 * (k0 + a[close])
        root = np.exp(0.25j * np.pi) * np.sqrt(tc)
        z = root * (yc / (2 * tc) - mid)
        dw = -2 * z * faddeeva(z) + 2j / _SQRT_PI
        # dM/da
        out[close] = -0.5 * np.exp(1j * yc * yc / (4 * tc)) * dw * root
    return out


def psi_step_coupling(x, t, k0, coupling, position):
    """Step-front amplitude for an arbitrary complex coupling.

    ``psi = M(x;k0) + (i g/2)/(k0 - i g/2) [M(y;k0) - M(y;i g/2)]`` with
    ``y = L + |x - L|``; valid on both sides of the barrier.
    """
    t = _require_positive_time(t)
    free = moshinsky(x, t, k0)
    g = complex(coupling)
    if g == 0:
        return free
    y = auxiliary_y(x, position)
    pole = 0.5j * g
    return free + pole * _pole_quotient(y, t, k0, pole)


def scattered_step(x, t, k0, coupling, position):
    """Barrier-induced part ``psi_step_coupling - moshinsky`` computed without cancellation."""
    t = _require_positive_time(t)
    g = complex(coupling)
    if g == 0:
        return np.zeros(np.broadcast(np.asarray(x), t).shape, dtype=complex)
    pole = 0.5j * g
    return pole * _pole_quotient(auxiliary_y(x, position), t, k0, pole)


def psi_step(x, t, k0, barrier: BarrierSpec):
    """Exact amplitude for theta(-x) exp(i k0 x) and a real (or absent) barrier."""
    if barrier.kind is BarrierKind.IMAGINARY:
        raise DomainError("psi_step handles real or absent barriers; use psi_step_imaginary")
    return psi_step_coupling(x, t, k0, 0.0 if barrier.is_absent else barrier.strength, barrier.position)


def psi_step_imaginary(x, t, k0, strength, position):
    """Exact amplitude for the absorbing barrier: the coupling is ``i*strength``."""
    if strength < 0:
        raise DomainError("absorbing strength must be >= 0")
    return psi_step_coupling(x, t, k0, 1j * strength, position)


def _coupling(barrier: BarrierSpec) -> complex:
    return 0j if barrier.is_absent else barrier.coupling


def psi_sine(x, t, k0, barrier: BarrierSpec):
    """Exact amplitude for theta(-x) sin(k0 x), any barrier kind.

    Written as ``[psi_step(k0) - psi_step(-k0)] / 2i``.
    """
    g = _coupling(barrier)
    plus = psi_step_coupling(x, t, k0, g, barrier.position)
    minus = psi_step_coupling(x, t, -k0, g, barrier.position)
    return (plus - minus) / 2j


def free_gaussian(x, t, sigma, k0):
    """Barrier-free evolution of sqrt(2/pi)/sigma exp(-(x/sigma)^2 + i k0 x); t >= 0."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("Gaussian evolution needs t >= 0")
    s2 = sigma**2 / 4 + 1j * t
    s = np.sqrt(s2)
    q = sigma**2 * k0 / 2 + 1j * x
    return np.exp(q * q / (4 * s2) - sigma**2 * k0**2 / 4) / (np.sqrt(2 * np.pi) * s)


def psi_gaussian(x, t, state: Gaussian, barrier: BarrierSpec, include_pole_term=True):
    """Transmitted-side (x > L) amplitude for the Gaussian initial state.

    The ``w`` term is the integral over real k of the Gaussian spectrum times
    the transmission amplitude k/(k - i g/2), continued from Re g > 0. Solving
    the initial-value problem requires the k contour to pass above the pole
    at ``p = i g/2``; ``include_pole_term`` adds the residue
    ``-i sqrt(2) p exp(-s^2 p^2 + q p - sigma^2 k0^2/4)`` that makes the
    difference. With it the amplitude at t = 0 reduces to the initial packet
    up to terms of order exp(-L^2/sigma^2).
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("Gaussian evolution needs t >= 0")
    g = _coupling(barrier)
    if g != 0 and np.any(x <= barrier.position):
        raise DomainError("the Gaussian transmitted solution holds for x > L only")
    sigma, k0 = state.sigma, state.k0
    s2 = sigma**2 / 4 + 1j * t
    s = np.sqrt(s2)
    q = sigma**2 * k0 / 2 + 1j * x
    c = -(sigma**2) * k0**2 / 4
    phase = q * q / (4 * s2) + c
    out = np.exp(phase) / (np.sqrt(2 * np.pi) * s)
    if g == 0:
        return out
    p = 0.5j * g
    z = p * s - q / (2 * s)
    z, phase = np.broadcast_arrays(z, phase)
    wterm = np.empty(z.shape, dtype=complex)
    upper = z.imag >= 0
    wterm[upper] = faddeeva(z[upper]) * np.exp(phase[upper])
    # fold exp(-z^2) into the exponent so neither factor overflows
    zl, pl = z[~upper], phase[~upper]
    wterm[~upper] = 2 * np.exp(pl - zl * zl) - faddeeva(-zl) * np.exp(pl)
    out = out - g / np.sqrt(8) * wterm
    if include_pole_term:
        out = out - 1j * np.sqrt(2) * p * np.exp(-s2 * p * p + q * p + c)
    return out


def wavefunction(x, t, state: InitialState, barrier: BarrierSpec):
    """Dispatch on the initial state."""
    if isinstance(state, StepPlane):
        return psi_step_coupling(x, t, state.k0, _coupling(barrier), barrier.position)
    if isinstance(state, SineFront):
        return psi_sine(x, t, state.k0, barrier)
    if isinstance(state, Gaussian):
        return psi_gaussian(x, t, state, barrier)
    raise TypeError(f"unsupported initial state {state!r}")


def density(psi):
    """Probability density |psi|^2."""
    psi = np.asarray(psi)
    return psi.real**2 + psi.imag**2


def evaluate_field(grid: SpacetimeGrid, state: InitialState, barrier: BarrierSpec) -> WaveField:
    T, X = grid.mesh()
    return WaveField(grid, wavefunction(X, T, state, barrier), Provenance.ANALYTIC)


def delta_density(grid: SpacetimeGrid, state: InitialState, barrier: BarrierSpec) -> WaveField:
    """|psi|^2 with the barrier minus |psi|^2 without it, over the grid."""
    T, X = grid.mesh()
    with_b = density(wavefunction(X, T, state, barrier))
    without = density(wavefunction(X, T, state, barrier.without()))
    return WaveField(grid, with_b - without, Provenance.ANALYTIC, meta={"quantity": "delta_density"})
