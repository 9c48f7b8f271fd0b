"""Classify a barrier as absent, real or absorbing from transmitted-side data.

A real barrier first changes the transmitted density at third order in t,
an absorbing one at second order. Behind an almost balanced interferometer
the barrier-dependent part of the output density keeps these exponents (t^3
and t^2), so a log-log fit of |Delta rho| against t over an early window
decides the class.

Only samples with x > L are accepted. The transmitted side alone carries the
signature, so no reflection measurement is needed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, FitError, NoValidWindowError, TransmittedOnlyError
from .short_time import DEFAULT_SAFETY_FACTOR, validity_window

__all__ = [
    "Verdict",
    "ScalingFit",
    "ClassifierConfig",
    "ClassificationResult",
    "TransmittedSamples",
    "fit_exponent",
    "auto_window",
    "classify",
    "transmitted_only_note",
    "check_transmitted_only",
]

MIN_POINTS = 5


class Verdict(str, enum.Enum):
    ABSENT = "Absent"
    REAL = "Real"
    IMAGINARY = "Imaginary"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    intercept: float
    r_squared: float
    window: tuple
    n_points: int
    sign: int = 1
    stderr: float = 0.0

    def confidence_interval(self, z=1.96):
        return (self.exponent - z * self.stderr, self.exponent + z * self.stderr)


@dataclass(frozen=True)
class ClassifierConfig:
    """Acceptance bands, fit threshold and window policy.

    ``window=None`` selects the window automatically (see :func:`auto_window`).
    """

    real_exponent: float = 3.0
    real_band: float = 0.25
    imaginary_exponent: float = 2.0
    imaginary_band: float = 0.25
    r2_min: float = 0.995
    noise_floor: float = 1e-12
    safety_factor: float = DEFAULT_SAFETY_FACTOR
    window: tuple | None = None

    def __post_init__(self):
        if self.real_band <= 0 or self.imaginary_band <= 0:
            raise ConfigurationError("acceptance bands must be positive")
        gap = abs(self.real_exponent - self.imaginary_exponent)
        if gap <= self.real_band + self.imaginary_band:
            raise ConfigurationError(
                f"acceptance bands overlap: |{self.real_exponent} - {self.imaginary_exponent}| <= "
                f"{self.real_band} + {self.imaginary_band}"
            )
        if not 0 < self.r2_min <= 1:
            raise ConfigurationError("r2_min must lie in (0, 1]")
        if self.safety_factor < 1:
            raise ConfigurationError("safety_factor must be >= 1")
        if self.window is not None and not 0 < self.window[0] < self.window[1]:
            raise ConfigurationError("window must satisfy 0 < t_min < t_max")


@dataclass(frozen=True)
class ClassificationResult:
    verdict: Verdict
    fit: ScalingFit | None
    config: ClassifierConfig
    window: tuple | None = None
    reason: str = ""

    def as_dict(self):
        fit = None
        if self.fit is not None:
            fit = {
                "exponent": self.fit.exponent,
                "intercept": self.fit.intercept,
                "r_squared": self.fit.r_squared,
                "n_points": self.fit.n_points,
                "sign": self.fit.sign,
                "confidence_interval": list(self.fit.confidence_interval()),
            }
        return {
            "verdict": self.verdict.value,
            "window": None if self.window is None else list(self.window),
            "fit": fit,
            "reason": self.reason,
            "thresholds": {
                "real": [self.config.real_exponent, self.config.real_band],
                "imaginary": [self.config.imaginary_exponent, self.config.imaginary_band],
                "r2_min": self.config.r2_min,
                "noise_floor": self.config.noise_floor,
            },
        }


@dataclass(frozen=True)
class TransmittedSamples:
    """Delta rho(t) recorded at one detector position.

    Parameters
    ----------
    t, delta : array_like
        Sample times and barrier-induced density change.
    reference_density : array_like
        Barrier-free density at the same times; sets the noise floor.
    position : float or array_like
        Detector coordinate of every sample (must all be > ``barrier_position``).
    barrier_position : float
    k0 : float
    strength_scale : float
        Expected barrier strength, used only to place the automatic window.
    imbalance : float, optional
        Beam-splitter imbalance eps when the data come from the interferometer.
    """

    t: np.ndarray
    delta: np.ndarray
    reference_density: np.ndarray
    position: np.ndarray
    barrier_position: float
    k0: float
    strength_scale: float
    imbalance: float | None = None
    source: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        delta = np.asarray(self.delta, dtype=float)
        ref = np.broadcast_to(np.asarray(self.reference_density, dtype=float), t.shape)
        pos = np.broadcast_to(np.asarray(self.position, dtype=float), t.shape)
        if t.ndim != 1 or delta.shape != t.shape:
            raise ValueError("t and delta must be 1-D arrays of equal length")
        if t.size and not np.all(np.diff(t) > 0):
            raise ValueError("sample times must be strictly increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "reference_density", np.array(ref))
        object.__setattr__(self, "position", np.array(pos))

    def scaled(self, factor):
        return TransmittedSamples(
            self.t,
            self.delta * factor,
            self.reference_density * factor,
            self.position,
            self.barrier_position,
            self.k0,
            self.strength_scale,
            self.imbalance,
            self.source,
            self.meta,
        )


def transmitted_only_note() -> str:
    """The data contract of :func:`classify`, as a sentence."""
    return (
        "classify consumes transmitted-side samples only: every detector position must satisfy x > L. "
        "The short-time exponent of the transmitted density alone separates a real from an absorbing "
        "barrier, so reflection and transmission need not be measured together."
    )


def check_transmitted_only(position, barrier_position):
    pos = np.atleast_1d(np.asarray(position, dtype=float))
    bad = pos[~(pos > barrier_position)]
    if bad.size:
        raise TransmittedOnlyError(
            f"{bad.size} sample(s) lie at x <= L = {barrier_position} (e.g. x = {bad[0]}); " + transmitted_only_note()
        )


def fit_exponent(t, delta, window=None) -> ScalingFit:
    """Least-squares slope of log|delta| against log t inside ``window``.

    Raises
    ------
    FitError
        Fewer than five points in the window, a zero or a sign change of
        ``delta`` inside it.
    """
    t = np.asarray(t, dtype=float)
    delta = np.asarray(delta, dtype=float)
    if window is None:
        window = (float(t.min()), float(t.max())) if t.size else (0.0, 0.0)
    lo, hi = window
    mask = (t >= lo) & (t <= hi)
    tw, dw = t[mask], delta[mask]
    if tw.size < MIN_POINTS:
        raise FitError(f"only {tw.size} samples in window ({lo:g}, {hi:g}); need at least {MIN_POINTS}")
    if np.any(tw <= 0):
        raise FitError("sample times must be > 0 for a log-log fit")
    signs = np.sign(dw)
    if np.any(signs == 0) or np.any(signs != signs[0]):
        raise FitError("delta vanishes or changes sign inside the window")
    lx, ly = np.log(tw), np.log(np.abs(dw))
    (slope, intercept), cov = np.polyfit(lx, ly, 1, cov="unscaled")
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    ss_res = float(np.sum(resid**2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    stderr = float(np.sqrt(cov[0, 0] * ss_res / (tw.size - 2)))
    return ScalingFit(float(slope), float(intercept), float(min(max(r2, 0.0), 1.0)), (float(lo), float(hi)), int(tw.size), int(signs[0]), stderr)


def auto_window(samples: TransmittedSamples, safety_factor=DEFAULT_SAFETY_FACTOR):
    """Fit window for ``samples``, intersected with the sampled range.

    The first choice is the barrier-dominated window 4 k0 x/lambda^2 << t << x/lambda.
    When that is empty (as for the parameters of the interferometer figures)
    the window becomes the decade below the short-time horizon

        t_hi = min(x/2k0, x/lambda, x^2/2, 2|eps| x/(c1^2 lambda)) / safety_factor,

    the last entry being the crossover between the t^2 and t^3 terms behind
    an interferometer with imbalance eps. Returns ``None`` if nothing of the
    window is sampled.
    """
    x = float(samples.position[0])
    lam = abs(samples.strength_scale)
    k0 = abs(samples.k0)
    window = None
    if lam > 0:
        try:
            window = validity_window(x, k0, lam, safety_factor)
        except NoValidWindowError:
            window = None
    if window is None:
        scales = [x * x / 2]
        if k0:
            scales.append(x / (2 * k0))
        if lam:
            scales.append(x / lam)
            if samples.imbalance:
                c1sq = (1 - samples.imbalance) / 2
                scales.append(2 * abs(samples.imbalance) * x / (c1sq * lam))
        t_hi = min(scales) / safety_factor
        window = (t_hi / 10, t_hi)
    elif samples.imbalance and lam:
        c1sq = (1 - samples.imbalance) / 2
        cross = 2 * abs(samples.imbalance) * x / (c1sq * lam) / safety_factor
        window = (window[0], min(window[1], cross))
    if samples.t.size == 0:
        return None
    lo = max(window[0], float(samples.t[0]))
    hi = min(window[1], float(samples.t[-1]))
    return (lo, hi) if lo < hi else None


def classify(samples: TransmittedSamples, config: ClassifierConfig | None = None) -> ClassificationResult:
    """Decide Absent / Real / Imaginary / Indeterminate from one detector's samples.

    Raises
    ------
    TransmittedOnlyError
        If any sample is tagged with x <= L.
    ValueError
        If the samples come from more than one detector position.
    """
    config = config or ClassifierConfig()
    check_transmitted_only(samples.position, samples.barrier_position)
    if samples.position.size and np.ptp(samples.position) != 0:
        raise ValueError("samples must come from a single detector position")

    window = config.window if config.window is not None else auto_window(samples, config.safety_factor)
    if window is not None:
        mask = (samples.t >= window[0]) & (samples.t <= window[1])
    else:
        mask = np.ones(samples.t.shape, dtype=bool)
    if mask.any():
        peak = float(np.max(np.abs(samples.delta[mask])))
        floor = config.noise_floor * float(np.max(np.abs(samples.reference_density[mask])))
        if peak <= floor:
            return ClassificationResult(Verdict.ABSENT, None, config, window, "max |delta| below noise floor")
    if window is None:
        return ClassificationResult(Verdict.INDETERMINATE, None, config, None, "no sampled time inside the fit window")

    try:
        fit = fit_exponent(samples.t, samples.delta, window)
    except FitError as exc:
        return ClassificationResult(Verdict.INDETERMINATE, None, config, window, str(exc))
    if fit.r_squared < config.r2_min:
        return ClassificationResult(
            Verdict.INDETERMINATE, fit, config, window, f"r^2 = {fit.r_squared:.4f} below {config.r2_min}"
        )
    if abs(fit.exponent - config.real_exponent) <= config.real_band:
        return ClassificationResult(Verdict.REAL, fit, config, window, "")
    if abs(fit.exponent - config.imaginary_exponent) <= config.imaginary_band:
        return ClassificationResult(Verdict.IMAGINARY, fit, config, window, "")
    return ClassificationResult(
        Verdict.INDETERMINATE, fit, config, window, f"exponent {fit.exponent:.3f} outside both bands"
    )
