"""Short-time scattering of a one-dimensional wave off a real or absorbing delta barrier.

Closed-form step, sine and Gaussian solutions, their short-time expansions,
independent numerical oracles, a Mach-Zehnder readout model and a classifier
that tells a real barrier from an absorbing one by the short-time exponent of
the transmitted density.
"""

__version__ = "0.1.0"

from .analytic import (
    delta_density,
    density,
    evaluate_field,
    free_gaussian,
    moshinsky,
    psi_gaussian,
    psi_sine,
    psi_step,
    psi_step_coupling,
    psi_step_imaginary,
    scattered_step,
    wavefunction,
)
from .classifier import (
    ClassificationResult,
    ClassifierConfig,
    ScalingFit,
    TransmittedSamples,
    Verdict,
    classify,
    fit_exponent,
    transmitted_only_note,
)
from .errors import (
    ConfigurationError,
    DomainError,
    FaddeevaOverflowError,
    FitError,
    NoValidWindowError,
    QuadratureError,
    TransmittedOnlyError,
)
from .interferometer import InterferometerSpec, mz_delta_density_curve, mz_density_shorttime, mz_output
from .model import (
    BarrierKind,
    BarrierSpec,
    Gaussian,
    Provenance,
    SineFront,
    SpacetimeGrid,
    StepPlane,
    WaveField,
)
from .short_time import (
    ExpansionSeries,
    expand_gaussian,
    expand_sine,
    expand_step_amplitude,
    expand_step_imaginary,
    expand_step_reflected,
    expand_step_transmitted,
    validity_window,
)
from .special import erfc_scaled, erfcx, faddeeva
