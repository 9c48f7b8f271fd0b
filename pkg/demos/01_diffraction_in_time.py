"""
Diffraction in time past a delta barrier
========================================

A plane-wave front exp(i k0 x) for x < 0 is released at t = 0 and runs into a
delta barrier at L = 1. We compare the density with and without the barrier
at t = 0.04 and look at where the two differ.
"""

import numpy as np

from deltabarrier import BarrierSpec, StepPlane, wavefunction

k0, L = 30.0, 1.0
t = 0.04
x = np.linspace(-1, 4, 1001)
front = StepPlane(k0)

# the barrier only changes the picture near the classical front and near L
for kind in ("real", "imaginary"):
    barrier = BarrierSpec(3.0, kind, L)
    rho = np.abs(wavefunction(x, t, front, barrier)) ** 2
    rho0 = np.abs(wavefunction(x, t, front, barrier.without())) ** 2
    delta = rho - rho0
    print(f"{kind:9s} barrier: max |delta rho| = {np.abs(delta).max():.4f} at x = {x[np.argmax(np.abs(delta))]:.3f}")

###############################################################################
# Far ahead of the front the two solutions coincide. The barrier-induced part
# falls off once x^2/t is large.

x = np.linspace(0.02, 10, 1000)
barrier = BarrierSpec(3.0, "real", L)
delta = np.abs(wavefunction(x, t, front, barrier)) ** 2 - np.abs(wavefunction(x, t, front, barrier.without())) ** 2
for threshold in (1e1, 1e2, 1e3):
    far = x**2 / t > threshold
    print(f"x^2/t > {threshold:6.0f}: max |delta| / peak = {np.abs(delta[far]).max() / np.abs(delta).max():.2e}")
