"""Short-time expansions of the step, sine and Gaussian solutions.

Each expansion is returned as an :class:`ExpansionSeries` whose coefficients
are evaluated numerically for fixed (x, k0, coupling). A series has the form

    prefactor * exp(i phase_rate / t) * t**base_exponent * sum_n c_n t**n
        + sum_j prefactor * a_j t**p_j sin(rate_j / t + phase_j)

where the oscillatory part is only used on the reflected side, whose
barrier term carries sin(L(L - x)/t) and has no Taylor expansion at t = 0.

The coupling convention is the one of :class:`~deltabarrier.model.BarrierSpec`:
an absorbing barrier enters every formula through ``g = i*strength``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NoValidWindowError
from .model import BarrierKind, BarrierSpec, Gaussian

__all__ = [
    "DEFAULT_SAFETY_FACTOR",
    "OscillatoryTerm",
    "ExpansionSeries",
    "SeriesSum",
    "SineExpansion",
    "step_amplitude_coefficients",
    "density_coefficients",
    "transmitted_density_braces",
    "expand_step_transmitted",
    "expand_step_amplitude",
    "expand_step_reflected",
    "expand_step_imaginary",
    "expand_sine",
    "expand_gaussian",
    "gaussian_short_time_amplitude",
    "gaussian_amplitude_short",
    "gaussian_amplitude_long",
    "validity_window",
    "expansion_horizon",
]

DEFAULT_SAFETY_FACTOR = 10.0


class OscillatoryTerm(NamedTuple):
    power: float
    amplitude: float
    rate: float
    phase: float = 0.0

    def __call__(self, t):
        return self.amplitude * t**self.power * np.sin(self.rate / t + self.phase)


@dataclass(frozen=True)
class ExpansionSeries:
    base_exponent: float
    coefficients: tuple
    prefactor: complex = 1.0
    phase_rate: float = 0.0
    validity_window: tuple | None = None
    oscillatory: tuple = ()
    quantity: str = "density"
    strict: bool = False
    label: str = ""

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def coefficient(self, n):
        """Coefficient of t**(base_exponent + n); zero beyond the stored order."""
        return self.coefficients[n] if n < len(self.coefficients) else 0.0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.strict and self.validity_window is not None:
            lo, hi = self.validity_window
            if np.any((t <= lo) | (t > hi)):
                raise DomainError(f"{self.label or 'series'} evaluated outside its window ({lo:g}, {hi:g}]")
        poly = np.zeros(t.shape, dtype=complex)
        for c in self.coefficients[::-1]:
            poly = poly * t + c
        value = self.prefactor * t**self.base_exponent * poly
        if self.phase_rate:
            value = value * np.exp(1j * self.phase_rate / t)
        for term in self.oscillatory:
            value = value + self.prefactor * term(t)
        if self.quantity in ("density", "phase"):
            return value.real
        return value

    def truncated(self, order):
        return ExpansionSeries(
            self.base_exponent,
            tuple(self.coefficients[:order]),
            self.prefactor,
            self.phase_rate,
            self.validity_window,
            self.oscillatory,
            self.quantity,
            self.strict,
            self.label,
        )


@dataclass(frozen=True)
class SeriesSum:
    """Sum of series with different phase factors (direct and image terms)."""

    terms: tuple = field(default_factory=tuple)

    def __call__(self, t):
        return sum(term(t) for term in self.terms)


class SineExpansion(NamedTuple):
    amplitude: ExpansionSeries
    density: ExpansionSeries
    phase: ExpansionSeries


def _coupling(barrier: BarrierSpec) -> complex:
    return 0j if barrier.is_absent else barrier.coupling


def _require_transmitted(x, barrier):
    if not x > barrier.position:
        raise DomainError(f"transmitted-side expansion needs x > L (x={x}, L={barrier.position})")


def step_amplitude_coefficients(x, k0, coupling):
    """Bracket coefficients (1, a1, a2) of the transmitted step amplitude.

    psi ~ sqrt(i t/pi) exp(i x^2/4t)/x * (1 + a1 t + a2 t^2).
    """
    g = complex(coupling)
    a1 = 2 * (k0 * x - 1j) / x**2 + 1j * g / x
    a2 = 4 * (k0**2 * x**2 - 3j * k0 * x - 3) / x**4 - g * (g * x - 6 - 2j * k0 * x) / x**3
    return (1.0 + 0j, a1, a2)


def density_coefficients(amplitude_coefficients, order):
    """Coefficients of |sum a_n t^n|^2 up to t^(order-1)."""
    a = list(amplitude_coefficients)
    out = []
    for n in range(order):
        c = sum(a[j] * np.conj(a[n - j]) for j in range(n + 1) if j < len(a) and n - j < len(a))
        out.append(float(np.real(c)))
    return tuple(out)


def transmitted_density_braces(x, k0, strength):
    """Written-out braces of the real-barrier transmitted density to t^2."""
    lam = strength
    return (
        1.0,
        4 * k0 / x,
        4 * (3 * (k0 * x) ** 2 - 5) / x**4 + lam / x**2 * (8 / x - lam),
    )


def expand_step_transmitted(x, k0, barrier: BarrierSpec, order=3, quantity="density"):
    """Transmitted-side (x > L) expansion for the step front.

    ``quantity="density"`` gives (t/pi x^2) {1 + 4k0 t/x + [...] t^2}, the
    barrier entering first through lambda(8/x - lambda)/x^2 at t^3 overall.
    ``quantity="amplitude"`` gives the bracket series of psi itself.
    ``order`` counts retained powers (at most 3).
    """
    _require_transmitted(x, barrier)
    if not 1 <= order <= 3:
        raise DomainError("order must be 1, 2 or 3")
    g = _coupling(barrier)
    amp = step_amplitude_coefficients(x, k0, g)
    window = (0.0, expansion_horizon(x, k0, abs(g)))
    if quantity == "amplitude":
        return ExpansionSeries(
            0.5,
            amp[:order],
            np.sqrt(1j / np.pi) / x,
            x * x / 4,
            window,
            quantity="amplitude",
            label="step transmitted amplitude",
        )
    if quantity != "density":
        raise ValueError("quantity must be 'density' or 'amplitude'")
    return ExpansionSeries(
        1.0,
        density_coefficients(amp, order),
        1 / (np.pi * x**2),
        validity_window=window,
        label="step transmitted density",
    )


def expand_step_amplitude(x, k0, barrier: BarrierSpec):
    """Two-exponential amplitude expansion valid for any x > 0.

    The direct term carries exp(i x^2/4t); the barrier term carries
    exp(i y^2/4t) with y = L + |x - L|. For x > L both phases coincide and
    the sum equals :func:`expand_step_transmitted` with
    ``quantity="amplitude"``.
    """
    if not x > 0:
        raise DomainError("expansion needs x > 0")
    g = _coupling(barrier)
    direct = ExpansionSeries(
        0.5,
        (1.0 + 0j, 2 * (k0 * x - 1j) / x**2, 4 * (k0**2 * x**2 - 3j * k0 * x - 3) / x**4),
        np.sqrt(1j / np.pi) / x,
        x * x / 4,
        quantity="amplitude",
        label="direct",
    )
    if g == 0:
        return SeriesSum((direct,))
    y = barrier.position + abs(x - barrier.position)
    image = ExpansionSeries(
        1.5,
        (1.0 + 0j, (1j * (g * y - 6) + 2 * k0 * y) / y**2),
        g * (1j) ** 1.5 / np.sqrt(np.pi) / y**2,
        y * y / 4,
        quantity="amplitude",
        label="barrier",
    )
    return SeriesSum((direct, image))


def expand_step_reflected(x, k0, barrier: BarrierSpec, safety_factor=DEFAULT_SAFETY_FACTOR):
    """Reflected-side (0 < x < L) density for the step front.

    (t/pi) { (1/x^2)(1 + 4 k0 t/x) - 2 lambda t sin[L(L-x)/t] / (x (2L-x)^2) }

    For a complex coupling g the sine becomes |g| sin[L(L-x)/t + arg g].
    The series is strict: evaluation with L(L-x)/t below ``safety_factor``
    raises :class:`DomainError`.
    """
    L = barrier.position
    if not 0 < x < L:
        raise DomainError(f"reflected-side expansion needs 0 < x < L (x={x}, L={L})")
    g = _coupling(barrier)
    y = 2 * L - x
    osc = ()
    if g != 0:
        osc = (OscillatoryTerm(2.0, -2 * abs(g) / (x * y**2), L * (L - x), float(np.angle(g))),)
    return ExpansionSeries(
        1.0,
        (1 / x**2, 4 * k0 / x**3),
        1 / np.pi,
        validity_window=(0.0, L * (L - x) / safety_factor),
        oscillatory=osc,
        strict=True,
        label="step reflected density",
    )


def expand_step_imaginary(x, k0, strength, position, order=2):
    """Transmitted density past an absorbing barrier: (t/pi x^2){1 + 2(2k0 - lambda)t/x}.

    ``order=3`` appends the t^2 coefficient obtained by continuing the
    real-barrier amplitude to g = i*lambda.
    """
    barrier = BarrierSpec(strength, BarrierKind.IMAGINARY, position)
    return expand_step_transmitted(x, k0, barrier, order=order)


def expand_sine(x, k0, barrier: BarrierSpec):
    """Amplitude, density and phase expansions of the sine-front solution (x > L)."""
    _require_transmitted(x, barrier)
    g = _coupling(barrier)
    window = (0.0, expansion_horizon(x, k0, abs(g)))
    amplitude = ExpansionSeries(
        1.5,
        (1.0 + 0j, 1j * (g - 6 / x) / x),
        2 * k0 / (np.sqrt(1j * np.pi) * x**2),
        x * x / 4,
        window,
        quantity="amplitude",
        label="sine amplitude",
    )
    # real coupling: the t^1 correction vanishes and the density is 4 k0^2 t^3/(pi x^4)
    density = ExpansionSeries(
        3.0,
        density_coefficients(amplitude.coefficients, 2),
        4 * k0**2 / (np.pi * x**4),
        validity_window=window,
        label="sine density",
    )
    phase = ExpansionSeries(
        -1.0,
        (x * x / 4, -np.pi / 4, (x * g.real - 6) / x**2),
        validity_window=window,
        quantity="phase",
        label="sine phase",
    )
    return SineExpansion(amplitude, density, phase)


def _gaussian_guard(x, state, barrier, safety_factor):
    _require_transmitted(x, barrier)
    bound = safety_factor * state.sigma**2 * state.k0
    if not x + barrier.position >= bound:
        raise DomainError(
            f"x + L >> sigma^2 k0 violated: x + L = {x + barrier.position:g} < {safety_factor:g} * sigma^2 k0 = {bound:g}"
        )


def gaussian_short_time_amplitude(x, t, state: Gaussian, barrier: BarrierSpec):
    """Gaussian amplitude with the w term replaced by its large-argument form."""
    g = _coupling(barrier)
    s2 = state.sigma**2 / 4 + 1j * np.asarray(t, dtype=float)
    q = state.sigma**2 * state.k0 / 2 + 1j * np.asarray(x, dtype=float)
    gauss = np.exp(q * q / (4 * s2) - state.sigma**2 * state.k0**2 / 4)
    return gauss / (np.sqrt(2 * np.pi * s2) * (1 - 1j * g * s2 / q))


def gaussian_amplitude_short(x, state: Gaussian, barrier: BarrierSpec):
    """t << sigma^2/4: time-independent barrier factor 1/(1 - g sigma^2/4x)."""
    g = _coupling(barrier)
    return np.sqrt(2 / np.pi) / state.sigma / (1 - g * state.sigma**2 / (4 * x)) * np.exp(-(x**2) / state.sigma**2)


def gaussian_amplitude_long(x, t, state: Gaussian, barrier: BarrierSpec):
    """t >> sigma^2/4: transmission 1/(1 - i g t/x) at the penetration velocity x/t."""
    g = _coupling(barrier)
    t = np.asarray(t, dtype=float)
    return (
        1
        / np.sqrt(2j * np.pi * t)
        / (1 - 1j * g * t / x)
        * np.exp(1j * x**2 / (4 * t) - state.sigma**2 * state.k0**2 / 4)
    )


def expand_gaussian(x, state: Gaussian, barrier: BarrierSpec, regime="long", safety_factor=DEFAULT_SAFETY_FACTOR):
    """Density of the Gaussian solution in the short (t << sigma^2/4) or long regime.

    Long regime: exp(-sigma^2 k0^2/2)/(2 pi t) times 1 - (lambda t/x)^2 for a
    real barrier, 1 - 2 lambda t/x for an absorbing one. Short regime:
    (2/(pi sigma^2)) exp(-2x^2/sigma^2) / |1 - g sigma^2/4x|^2, independent of t.
    """
    _gaussian_guard(x, state, barrier, safety_factor)
    g = _coupling(barrier)
    sigma, k0 = state.sigma, state.k0
    if regime == "short":
        denom = 1 - g * sigma**2 / (4 * x)
        if abs(denom) < 1 / safety_factor:
            raise DomainError("short regime too close to the singular point 4x = lambda sigma^2")
        value = 2 / (np.pi * sigma**2) * np.exp(-2 * x**2 / sigma**2) / abs(denom) ** 2
        return ExpansionSeries(
            0.0, (value,), validity_window=(0.0, sigma**2 / (4 * safety_factor)), label="gaussian short"
        )
    if regime != "long":
        raise ValueError("regime must be 'short' or 'long'")
    lam = barrier.strength if not barrier.is_absent else 0.0
    if barrier.is_absent:
        coeffs = (1.0,)
    elif barrier.kind is BarrierKind.REAL:
        coeffs = (1.0, 0.0, -((lam / x) ** 2))
    else:
        coeffs = (1.0, -2 * lam / x)
    t_hi = x / (safety_factor * lam) if lam > 0 else np.inf
    return ExpansionSeries(
        -1.0,
        coeffs,
        np.exp(-(sigma**2) * k0**2 / 2) / (2 * np.pi),
        validity_window=(safety_factor * sigma**2 / 4, t_hi),
        label="gaussian long",
    )


def validity_window(x, k0, strength, safety_factor=DEFAULT_SAFETY_FACTOR):
    """Window 4 k0 x/lambda^2 << t << x/lambda where the barrier dominates the k0 term.

    Both ends are moved inward by ``safety_factor``; ``safety_factor=1``
    returns the raw bounds.

    Raises
    ------
    NoValidWindowError
        If the window is empty after the safety factors.
    """
    if not (strength > 0 and x > 0):
        raise DomainError("validity_window needs lambda > 0 and x > 0")
    t_min = safety_factor * 4 * k0 * x / strength**2
    t_max = x / (strength * safety_factor)
    if not t_min < t_max:
        raise NoValidWindowError(
            f"no valid window: {t_min:g} (= {safety_factor:g} * 4 k0 x/lambda^2) >= {t_max:g} (= x/lambda / {safety_factor:g})"
        )
    return (t_min, t_max)


def expansion_horizon(x, k0, strength):
    """Time scale below which every expansion parameter (k0 t/x, lambda t/x, t/x^2) is < 1."""
    scales = [x / (2 * abs(k0)) if k0 else np.inf, x * x / 2]
    if strength:
        scales.append(x / abs(strength))
    return float(min(scales))
