"""
Gaussian packet: frozen tail and free spreading
===============================================

For a Gaussian packet the barrier enters through a constant factor at very
early times and through the transmission amplitude at the velocity x/t later.
"""

import numpy as np

from deltabarrier import BarrierSpec, Gaussian
from deltabarrier.analytic import free_gaussian, psi_gaussian
from deltabarrier.short_time import expand_gaussian

# early times: the tail is frozen and rescaled by |1 - g sigma^2/4x|^-2
g, x = Gaussian(0.4, 0.5), 2.0
for kind in ("real", "imaginary"):
    b = BarrierSpec(1.0, kind, 1.0)
    exact = abs(psi_gaussian(x, 1e-6, g, b)) ** 2
    print(f"short, {kind}: series/exact = {expand_gaussian(x, g, b, regime='short')(1e-6) / exact:.4f}")

# later: spreading packet, transmission evaluated at k = x/2t
g, x = Gaussian(0.02, 1.0), 20.0
for kind in ("real", "imaginary"):
    b = BarrierSpec(1.0, kind, 1.0)
    for t in (1.0, 2.0):
        exact = abs(psi_gaussian(x, t, g, b)) ** 2
        free = abs(free_gaussian(x, t, g.sigma, g.k0)) ** 2
        print(f"long, {kind}, t={t}: series/exact = {expand_gaussian(x, g, b)(t) / exact:.4f}, "
              f"barrier effect {exact / free - 1:+.4f}")

###############################################################################
# The frozen-tail regime can only be checked where exp(-x^2/sigma^2) is not
# swamped by roundoff in the exact solution (x/sigma up to about 5).
