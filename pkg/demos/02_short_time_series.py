"""
Short-time series for the transmitted density
=============================================

On the transmitted side (x > L) the density is a power series in t. A real
barrier first shows up at t^3, an absorbing one already at t^2.
"""

import numpy as np

from deltabarrier import BarrierSpec, StepPlane, wavefunction
from deltabarrier.short_time import expand_step_transmitted

k0, x = 30.0, 2.0
t = np.logspace(-6, -4, 21)

for kind in ("real", "imaginary"):
    barrier = BarrierSpec(3.0, kind, 1.0)
    exact = np.abs(wavefunction(x, t, StepPlane(k0), barrier)) ** 2
    print(f"{kind} barrier")
    for order in (1, 2, 3):
        series = expand_step_transmitted(x, k0, barrier, order=order)
        resid = np.abs(series(t) - exact)
        slope = np.polyfit(np.log(t), np.log(resid), 1)[0]
        print(f"  order {order}: residual ~ t^{slope:.2f}")

###############################################################################
# The barrier part of the t^3 coefficient is lambda (8/x - lambda) / (pi x^4).

barrier = BarrierSpec(3.0, "real", 1.0)
a = expand_step_transmitted(x, k0, barrier)
b = expand_step_transmitted(x, k0, barrier.without())
print("t^3 barrier coefficient:", (a.coefficient(2) - b.coefficient(2)) * a.prefactor)
print("lambda (8/x - lambda) / (pi x^4):", 3.0 * (8 / x - 3.0) / (np.pi * x**4))
