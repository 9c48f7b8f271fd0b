"""Cross-validation runs of the closed forms against both oracles."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..analytic import psi_gaussian, psi_sine, psi_step_coupling
from ..model import BarrierKind, BarrierSpec, Gaussian
from .crank_nicolson import LatticeSpec, propagate_cn
from .spectral import spectral_reference, spectral_reference_gaussian, spectral_reference_sine

__all__ = [
    "StandardPoint",
    "standard_point_set",
    "gaussian_point_set",
    "ComparisonReport",
    "compare_spectral",
    "compare_gaussian_cn",
    "compare_absent",
]


@dataclass(frozen=True)
class StandardPoint:
    x: float
    t: float
    k0: float
    barrier: BarrierSpec


def standard_point_set(k0=30.0, strength=3.0, position=1.0):
    """Fifty (x, t, barrier) points: both sides of the barrier, five decades of t, both kinds."""
    xs = (-0.5, 0.5, 1.5, 2.0, 3.0)
    ts = (0.002, 0.01, 0.04, 0.2, 1.0)
    kinds = (BarrierKind.REAL, BarrierKind.IMAGINARY)
    return [
        StandardPoint(x, t, k0, BarrierSpec(strength, kind, position))
        for kind, x, t in itertools.product(kinds, xs, ts)
    ]


@dataclass(frozen=True)
class ComparisonReport:
    name: str
    max_error: float
    mean_error: float
    tolerance: float
    n_points: int
    detail: dict

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tolerance)

    def as_dict(self):
        return {
            "name": self.name,
            "max_relative_error": self.max_error,
            "mean_relative_error": self.mean_error,
            "tolerance": self.tolerance,
            "n_points": self.n_points,
            "passed": self.passed,
            **self.detail,
        }


def compare_spectral(points=None, tolerance=1e-6, floor=1e-8) -> ComparisonReport:
    """Relative deviation of the step and sine solutions from the spectral reference.

    Points where the reference is below ``floor`` in modulus are skipped.
    """
    points = points if points is not None else standard_point_set()
    errs = []
    for p in points:
        g = p.barrier.coupling
        ref = spectral_reference(p.x, p.t, p.k0, p.barrier)
        if abs(ref) > floor:
            errs.append(abs(psi_step_coupling(p.x, p.t, p.k0, g, p.barrier.position) - ref) / abs(ref))
        ref = spectral_reference_sine(p.x, p.t, p.k0, p.barrier)
        if abs(ref) > floor:
            errs.append(abs(psi_sine(p.x, p.t, p.k0, p.barrier) - ref) / abs(ref))
    for x, t, state, barrier in gaussian_point_set():
        ref = spectral_reference_gaussian(x, t, state, barrier)
        if abs(ref) > floor:
            errs.append(abs(psi_gaussian(x, t, state, barrier) - ref) / abs(ref))
    errs = np.array(errs)
    return ComparisonReport("spectral_vs_closed_form", float(errs.max()), float(errs.mean()), tolerance, errs.size, {})


def gaussian_point_set(strength=3.0, position=1.0):
    """Transmitted-side Gaussian points, sigma = 0.2 and k0 = 5, for both barrier kinds."""
    state = Gaussian(0.2, 5.0)
    return [
        (x, t, state, BarrierSpec(strength, kind, position))
        for kind in (BarrierKind.REAL, BarrierKind.IMAGINARY)
        for x in (1.2, 1.5, 2.5)
        for t in (0.01, 0.04, 0.2)
    ]


def compare_gaussian_cn(
    state=Gaussian(0.2, 5.0),
    strength=3.0,
    position=1.0,
    kind=BarrierKind.REAL,
    dx=1e-3,
    dt=1e-4,
    x_min=-4.0,
    x_max=8.0,
    t_final=None,
    tolerance=1e-3,
) -> ComparisonReport:
    """L-infinity relative deviation of the Gaussian closed form from Crank-Nicolson at t = sigma^2.

    Only lattice nodes with x > L enter; the error is normalised by the peak
    of the closed form there.
    """
    barrier = BarrierSpec(strength, kind, position)
    t_final = state.sigma**2 if t_final is None else t_final
    lattice = LatticeSpec.around(position, dx, x_min, x_max, dt)
    field = propagate_cn(state(lattice.x), barrier, lattice, t_final)
    x = lattice.x
    right = (x > position) & (x < x_max - 1.0)
    exact = psi_gaussian(x[right], t_final, state, barrier)
    err = np.abs(field.values[-1][right] - exact)
    scale = np.abs(exact).max()
    return ComparisonReport(
        f"gaussian_cn_{BarrierKind(kind).value}",
        float(err.max() / scale),
        float(err.mean() / scale),
        tolerance,
        int(right.sum()),
        {
            "dx": dx,
            "dt": dt,
            "t_final": t_final,
            "x_range": [x_min, x_max],
            "phase_error": field.meta["phase_error"],
            "accuracy_warning": field.meta["accuracy_warning"],
        },
    )


def compare_absent(points=None, tolerance=1e-12) -> ComparisonReport:
    """lambda = 0 sanity: closed forms against the unregularised spectral integral."""
    points = points if points is not None else standard_point_set()
    errs = []
    for p in points:
        absent = p.barrier.without()
        ref = spectral_reference(p.x, p.t, p.k0, absent, eta=0.0)
        errs.append(abs(psi_step_coupling(p.x, p.t, p.k0, 0.0, p.barrier.position) - ref) / abs(ref))
    g = Gaussian(0.2, 5.0)
    absent = BarrierSpec(0.0, BarrierKind.ABSENT, 1.0)
    for x in np.linspace(1.1, 4.0, 30):
        ref = spectral_reference_gaussian(x, 0.04, g, absent)
        errs.append(abs(psi_gaussian(x, 0.04, g, absent) - ref) / abs(ref))
    errs = np.array(errs)
    return ComparisonReport("absent_barrier_reduction", float(errs.max()), float(errs.mean()), tolerance, errs.size, {})
