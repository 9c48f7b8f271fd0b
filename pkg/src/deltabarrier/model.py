"""Value types shared by the solvers: barrier, initial states, grids, fields.

Units are the reduced ones used throughout: hbar = 1 and 2m = 1, so a plane
wave evolves as exp(i k x - i k**2 t).

Sign convention for the barrier
-------------------------------
Every closed form in :mod:`deltabarrier.analytic` is built from the
scattering amplitude ``(i g/2) / (k - i g/2)`` with the complex coupling
``g`` returned by :attr:`BarrierSpec.coupling`. That amplitude satisfies the
derivative jump ``psi'(L+) - psi'(L-) = -g psi(L)``, so the Hamiltonian it
belongs to is ``H = -d^2/dx^2 - g delta(x - L)``. For ``kind=IMAGINARY`` the
coupling is ``i*strength`` and the potential ``-i*strength*delta(x - L)``
removes probability. The lattice propagator in :mod:`deltabarrier.oracle`
uses the same Hamiltonian.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

import numpy as np


class BarrierKind(str, enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"
    ABSENT = "absent"


@dataclass(frozen=True)
class BarrierSpec:
    """Delta barrier of a given strength and kind located at ``position``."""

    strength: float
    kind: BarrierKind = BarrierKind.REAL
    position: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", BarrierKind(self.kind))
        if not np.isfinite(self.strength) or self.strength < 0:
            raise ValueError(f"barrier strength must be finite and >= 0, got {self.strength}")
        if not np.isfinite(self.position) or self.position <= 0:
            raise ValueError(f"barrier position must be > 0, got {self.position}")

    @property
    def coupling(self) -> complex:
        """Complex coupling entering the scattering amplitude."""
        if self.kind is BarrierKind.REAL:
            return complex(self.strength)
        if self.kind is BarrierKind.IMAGINARY:
            return 1j * self.strength
        return 0j

    @property
    def is_absent(self) -> bool:
        return self.kind is BarrierKind.ABSENT or self.strength == 0

    def without(self) -> "BarrierSpec":
        """Same geometry with the barrier removed."""
        return BarrierSpec(0.0, BarrierKind.ABSENT, self.position)

    def as_kind(self, kind) -> "BarrierSpec":
        return BarrierSpec(self.strength, BarrierKind(kind), self.position)


@dataclass(frozen=True)
class StepPlane:
    """Semi-infinite plane wave theta(-x) exp(i k0 x)."""

    k0: float

    def __post_init__(self):
        if not self.k0 > 0:
            raise ValueError(f"k0 must be > 0, got {self.k0}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x < 0, np.exp(1j * self.k0 * x), 0j)


@dataclass(frozen=True)
class SineFront:
    """theta(-x) sin(k0 x): vanishes at the front."""

    k0: float

    def __post_init__(self):
        if not self.k0 > 0:
            raise ValueError(f"k0 must be > 0, got {self.k0}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x < 0, np.sin(self.k0 * x), 0.0).astype(complex)


@dataclass(frozen=True)
class Gaussian:
    """sqrt(2/pi)/sigma * exp(-(x/sigma)**2 + i k0 x), centred on the origin.

    The prefactor is kept as written; it does not normalise the packet
    (the squared norm is 2/(sqrt(2 pi) sigma)).
    """

    sigma: float
    k0: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if not self.k0 > 0:
            raise ValueError(f"k0 must be > 0, got {self.k0}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.sqrt(2 / np.pi) / self.sigma * np.exp(-((x / self.sigma) ** 2) + 1j * self.k0 * x)


InitialState = Union[StepPlane, SineFront, Gaussian]


def auxiliary_y(x, position):
    """Image coordinate y = L + |x - L| used by the reflected terms."""
    return position + np.abs(np.asarray(x, dtype=float) - position)


class Provenance(str, enum.Enum):
    ANALYTIC = "analytic"
    EXPANSION = "expansion"
    ORACLE = "oracle"


@dataclass(frozen=True)
class SpacetimeGrid:
    x: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=float))
        t = np.atleast_1d(np.asarray(self.t, dtype=float))
        for name, arr in (("x", x), ("t", t)):
            if arr.ndim != 1 or not np.all(np.isfinite(arr)):
                raise ValueError(f"grid {name} must be a finite 1-D array")
            if arr.size > 1 and not np.all(np.diff(arr) > 0):
                raise ValueError(f"grid {name} must be strictly increasing")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "t", t)

    @property
    def shape(self):
        return (self.t.size, self.x.size)

    def mesh(self):
        """(T, X) arrays of shape ``(n_t, n_x)``."""
        return np.meshgrid(self.t, self.x, indexing="ij")


@dataclass
class WaveField:
    """Samples over a grid, indexed ``values[i_t, i_x]``."""

    grid: SpacetimeGrid
    values: np.ndarray
    provenance: Provenance = Provenance.ANALYTIC
    order: int | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values).reshape(self.grid.shape)
        if not np.all(np.isfinite(self.values)):
            raise ValueError("wave field contains non-finite values")
        self.provenance = Provenance(self.provenance)

    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2
