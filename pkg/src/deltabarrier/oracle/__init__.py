"""Independent numerical references for the closed-form solutions."""

from .spectral import (
    contour_integral,
    spectral_reference,
    spectral_reference_gaussian,
    spectral_reference_sine,
)

__all__ = [
    "contour_integral",
    "spectral_reference",
    "spectral_reference_gaussian",
    "spectral_reference_sine",
]

from .crank_nicolson import Boundary, LatticeSpec, phase_error_estimate, propagate_cn

__all__ += ["Boundary", "LatticeSpec", "phase_error_estimate", "propagate_cn"]

from .validation import ComparisonReport, compare_absent, compare_gaussian_cn, compare_spectral, standard_point_set

__all__ += ["ComparisonReport", "compare_absent", "compare_gaussian_cn", "compare_spectral", "standard_point_set"]
