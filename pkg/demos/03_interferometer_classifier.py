"""
Telling a real barrier from an absorbing one
============================================

One arm of an almost balanced Mach-Zehnder interferometer holds the barrier.
The barrier-induced change of the output density grows like t^3 for a real
barrier and like t^2 for an absorbing one. A log-log fit over an early window
classifies the barrier from transmitted-side data only.
"""

import numpy as np

from deltabarrier import BarrierSpec
from deltabarrier.classifier import classify
from deltabarrier.interferometer import InterferometerSpec, mz_delta_density_curve

t = np.logspace(-4, -0.5, 200)
for kind in ("real", "imaginary", "absent"):
    barrier = BarrierSpec(0.0 if kind == "absent" else 3.0, kind, 1.0)
    spec = InterferometerSpec(np.sqrt(0.49), barrier, x=10.0)
    result = classify(mz_delta_density_curve(t, spec, k0=30.0))
    exponent = "-" if result.fit is None else f"{result.fit.exponent:.3f}"
    print(f"{kind:9s} -> {result.verdict.value:13s} exponent {exponent} window {result.window}")

###############################################################################
# Past x/lambda the power law is gone and the classifier refuses to answer.

from deltabarrier.classifier import ClassifierConfig

late = np.logspace(0.6, 1.5, 80)
spec = InterferometerSpec(np.sqrt(0.49), BarrierSpec(3.0, "real", 1.0), x=10.0)
result = classify(mz_delta_density_curve(late, spec, 30.0), ClassifierConfig(window=(4.0, 30.0)))
print("late window:", result.verdict.value, "-", result.reason)
