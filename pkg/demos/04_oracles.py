"""
Checking the closed forms against two independent oracles
=========================================================

The closed-form solutions are compared with a contour-integral evaluation of
the spectral representation and with a Crank-Nicolson lattice propagation.
"""

from deltabarrier.oracle import compare_absent, compare_gaussian_cn, compare_spectral

for report in (compare_spectral(), compare_absent()):
    print(f"{report.name}: max rel err {report.max_error:.2e} over {report.n_points} values")

for kind in ("real", "imaginary"):
    r = compare_gaussian_cn(kind=kind)
    print(f"{r.name}: max err {r.max_error:.2e} (tolerance {r.tolerance:g}, phase error {r.detail['phase_error']:.2f})")
