"""Mach-Zehnder readout of the barrier signature.

Both beam splitters transmit with amplitude c1 and reflect with c2,
c1^2 + c2^2 = 1, and the imbalance eps is defined by c1^2 = (1 - eps)/2.
One arm contains the barrier. The detector port is taken with the sign that
gives the free arm weight +eps:

    psi = eps * psi_free + c1^2 * (psi_barrier - psi_free)

At short times this reads sqrt(i t/pi) exp(i x^2/4t)/x (eps + i g t/2x + ...),
so the output density minus its barrier-free value grows like t^3 for a
real barrier and like t^2 for an absorbing one.

Two arm models are provided. ``model="expansion"`` uses the second-order
brackets of the transmitted step amplitude. ``model="exact"`` uses the
closed-form step solution with the barrier at ``L`` and the detector at
coordinate ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import moshinsky, scattered_step
from .classifier import TransmittedSamples
from .errors import DomainError
from .model import BarrierKind, BarrierSpec

__all__ = [
    "IMBALANCE_GUARD",
    "InterferometerSpec",
    "free_bracket",
    "barrier_bracket",
    "mz_output",
    "mz_density_shorttime",
    "mz_delta_density",
    "mz_delta_density_curve",
]

# |eps| above this is no longer "almost balanced"
IMBALANCE_GUARD = 0.1
_UNIT_TOL = 1e-14


@dataclass(frozen=True)
class InterferometerSpec:
    c1: float
    barrier: BarrierSpec
    x: float
    c2: float | None = None

    def __post_init__(self):
        if self.c2 is None:
            object.__setattr__(self, "c2", float(np.sqrt(max(1.0 - self.c1**2, 0.0))))
        if self.c1 < 0 or self.c2 < 0:
            raise ValueError("beam-splitter amplitudes must be >= 0")
        if abs(self.c1**2 + self.c2**2 - 1) > _UNIT_TOL:
            raise ValueError(f"c1^2 + c2^2 = {self.c1**2 + self.c2**2!r} differs from 1")
        if abs(self.epsilon) > IMBALANCE_GUARD:
            raise ValueError(f"|eps| = {abs(self.epsilon):g} exceeds the near-balance guard {IMBALANCE_GUARD}")
        if not self.x > self.barrier.position:
            raise DomainError("the detector must sit on the transmitted side, x > L")

    @classmethod
    def from_imbalance(cls, epsilon, barrier, x):
        return cls(float(np.sqrt((1 - epsilon) / 2)), barrier, x, float(np.sqrt((1 + epsilon) / 2)))

    @property
    def epsilon(self) -> float:
        """eps = c2^2 - c1^2."""
        return self.c2**2 - self.c1**2

    @property
    def c1_squared(self) -> float:
        return self.c1**2


def _coupling(barrier):
    return 0j if barrier.is_absent else barrier.coupling


def _positive_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)):
        raise DomainError("interferometer output needs t > 0")
    return t


def free_bracket(t, x, k0):
    return 1 + 2 * (k0 * x - 1j) * t / x**2 + 4 * (k0**2 * x**2 - 3j * k0 * x - 3) * t**2 / x**4


def barrier_bracket(t, x, k0, coupling):
    g = complex(coupling)
    return 1j * g * t / x - g * (g * x - 6 - 2j * k0 * x) * t**2 / x**3


def _arms(t, k0, spec, model):
    """(free-arm amplitude, barrier-induced amplitude) at the detector."""
    g = _coupling(spec.barrier)
    x = spec.x
    if model == "expansion":
        pre = np.sqrt(1j * t / np.pi) * np.exp(1j * x * x / (4 * t)) / x
        return pre * free_bracket(t, x, k0), pre * barrier_bracket(t, x, k0, g)
    if model == "exact":
        return moshinsky(x, t, k0), scattered_step(x, t, k0, g, spec.barrier.position)
    raise ValueError("model must be 'expansion' or 'exact'")


def mz_output(t, k0, spec: InterferometerSpec, model="expansion"):
    """Output amplitude eps * psi_free + c1^2 * (psi_barrier - psi_free)."""
    t = _positive_time(t)
    free, scattered = _arms(t, k0, spec, model)
    return spec.epsilon * free + spec.c1_squared * scattered


def mz_density_shorttime(t, spec: InterferometerSpec):
    """Leading short-time output density.

    Real barrier: (t/pi x^2)[eps^2 + (lambda t/2x)^2].
    Absorbing barrier: (t eps/pi x^2)[eps - lambda t/x].
    """
    t = _positive_time(t)
    x, eps = spec.x, spec.epsilon
    lam = 0.0 if spec.barrier.is_absent else spec.barrier.strength
    base = t / (np.pi * x**2)
    if spec.barrier.is_absent or spec.barrier.kind is BarrierKind.REAL:
        return base * (eps**2 + (lam * t / (2 * x)) ** 2)
    return base * eps * (eps - lam * t / x)


def mz_delta_density(t, k0, spec: InterferometerSpec, model="exact"):
    """Output density minus its barrier-free value.

    ``model="shorttime"`` uses :func:`mz_density_shorttime`; the other models
    expand |eps F + c1^2 S|^2 - |eps F|^2 = 2 eps c1^2 Re(F S*) + c1^4 |S|^2
    so the small barrier term is not lost to cancellation.
    """
    t = _positive_time(t)
    if model == "shorttime":
        free_density = t / (np.pi * spec.x**2) * spec.epsilon**2
        return mz_density_shorttime(t, spec) - free_density
    free, scattered = _arms(t, k0, spec, model)
    c1sq = spec.c1_squared
    return 2 * spec.epsilon * c1sq * np.real(free * np.conj(scattered)) + c1sq**2 * np.abs(scattered) ** 2


def mz_delta_density_curve(t_grid, spec: InterferometerSpec, k0, model="exact") -> TransmittedSamples:
    """Delta rho(t) at the detector, packaged for :func:`deltabarrier.classifier.classify`."""
    t = _positive_time(t_grid)
    delta = mz_delta_density(t, k0, spec, model)
    free, _ = _arms(t, k0, spec, "exact" if model == "shorttime" else model)
    reference = np.abs(spec.epsilon * free) ** 2
    if spec.epsilon == 0:
        reference = np.abs(free) ** 2
    return TransmittedSamples(
        t,
        delta,
        reference,
        spec.x,
        spec.barrier.position,
        k0,
        spec.barrier.strength,
        spec.epsilon,
        source=f"interferometer/{model}",
    )
