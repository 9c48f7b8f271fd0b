import numpy as np
import pytest

from deltabarrier.classifier import TransmittedSamples
from deltabarrier.errors import DomainError
from deltabarrier.interferometer import (
    InterferometerSpec,
    barrier_bracket,
    free_bracket,
    mz_delta_density,
    mz_delta_density_curve,
    mz_density_shorttime,
    mz_output,
)
from deltabarrier.model import BarrierSpec

REAL = BarrierSpec(3.0, "real", 1.0)
IMAG = BarrierSpec(3.0, "imaginary", 1.0)
ABSENT = BarrierSpec(0.0, "absent", 1.0)
K0 = 30.0


def balanced(barrier, x=10.0):
    c = np.sqrt(0.5)
    return InterferometerSpec(c, barrier, x, c)


def test_epsilon_from_c1():
    spec = InterferometerSpec(0.7, REAL, 10.0)
    assert spec.epsilon == pytest.approx(0.02, abs=1e-14)
    assert spec.c1_squared == pytest.approx(0.49)
    assert balanced(REAL).epsilon == 0


def test_from_imbalance_roundtrip():
    spec = InterferometerSpec.from_imbalance(0.05, REAL, 2.0)
    assert spec.epsilon == pytest.approx(0.05, abs=1e-14)


@pytest.mark.parametrize(
    "kw",
    [
        dict(c1=0.5),  # eps = 0.5 breaks near balance
        dict(c1=0.7, c2=0.7),  # not unitary
        dict(c1=-0.7),
    ],
)
def test_spec_validation(kw):
    with pytest.raises(ValueError):
        InterferometerSpec(barrier=REAL, x=10.0, **kw)


def test_detector_must_be_transmitted_side():
    with pytest.raises(DomainError):
        InterferometerSpec(0.7, REAL, 0.5)


def test_time_must_be_positive():
    with pytest.raises(DomainError):
        mz_output([0.0, 0.1], K0, balanced(REAL))


def test_unknown_model():
    with pytest.raises(ValueError):
        mz_output(0.01, K0, balanced(REAL), model="fourier")


@pytest.mark.parametrize("model", ["expansion", "exact"])
def test_balanced_without_barrier_is_dark(model):
    t = np.logspace(-4, -1, 7)
    assert np.all(mz_output(t, K0, balanced(ABSENT), model) == 0)
    assert np.all(mz_delta_density(t, K0, balanced(ABSENT), model) == 0)


@pytest.mark.parametrize("model", ["expansion", "exact", "shorttime"])
def test_absent_barrier_has_no_delta(model):
    spec = InterferometerSpec(0.7, ABSENT, 10.0)
    assert np.all(mz_delta_density(np.logspace(-4, -1, 5), K0, spec, model) == 0)


def test_brackets_start_at_one_and_zero():
    assert free_bracket(0.0, 2.0, K0) == 1
    assert barrier_bracket(0.0, 2.0, K0, 3.0) == 0


@pytest.mark.parametrize("barrier", [REAL, IMAG])
def test_short_time_output_form(barrier):
    # psi / (sqrt(i t/pi) e^{i x^2/4t} / x) -> eps + i g t / 2x for c1^2 near 1/2
    spec = balanced(barrier, x=2.0)
    t = 1e-7
    pre = np.sqrt(1j * t / np.pi) * np.exp(1j * spec.x**2 / (4 * t)) / spec.x
    ratio = mz_output(t, K0, spec) / pre
    assert ratio == pytest.approx(1j * barrier.coupling * t / (2 * spec.x), rel=1e-4)


def test_real_shorttime_density_is_cubic():
    spec = balanced(REAL, x=2.0)
    t = np.array([1e-7, 2e-7])
    rho = mz_density_shorttime(t, spec)
    assert rho == pytest.approx(t / (np.pi * 4) * (3.0 * t / 4) ** 2)
    assert np.log2(rho[1] / rho[0]) == pytest.approx(3.0)


def test_imaginary_shorttime_density():
    spec = InterferometerSpec(0.7, IMAG, 2.0)
    t = 1e-6
    eps = spec.epsilon
    assert mz_density_shorttime(t, spec) == pytest.approx(t * eps / (4 * np.pi) * (eps - 3 * t / 2))


def test_real_delta_leading_term_matches_expansion():
    spec = balanced(REAL, x=2.0)
    t = 1e-6
    lead = mz_delta_density(t, K0, spec, "shorttime")
    assert mz_delta_density(t, K0, spec, "expansion") == pytest.approx(lead, rel=1e-3)
    assert mz_delta_density(t, K0, spec, "exact") == pytest.approx(lead, rel=1e-3)


def test_imaginary_delta_leading_term_matches_expansion():
    spec = InterferometerSpec(0.7, IMAG, 2.0)
    t = 1e-7
    lead = mz_delta_density(t, K0, spec, "shorttime")
    # the expansion carries 2 eps c1^2 = eps (1 - eps) where the leading form has eps
    expected = lead * (1 - spec.epsilon)
    assert mz_delta_density(t, K0, spec, "expansion") == pytest.approx(expected, rel=1e-3)
    assert mz_delta_density(t, K0, spec, "exact") == pytest.approx(expected, rel=1e-3)


@pytest.mark.parametrize("barrier", [REAL, IMAG])
def test_expansion_tracks_exact_at_short_times(barrier):
    spec = InterferometerSpec(0.7, barrier, 10.0)
    t = np.logspace(-5, -3, 5)
    ex = mz_delta_density(t, K0, spec, "exact")
    ap = mz_delta_density(t, K0, spec, "expansion")
    np.testing.assert_allclose(ap, ex, rtol=0.05)


def test_delta_curve_packaging():
    spec = InterferometerSpec(0.7, REAL, 10.0)
    t = np.logspace(-4, -2, 20)
    samples = mz_delta_density_curve(t, spec, K0)
    assert isinstance(samples, TransmittedSamples)
    assert np.all(samples.position == 10.0) and samples.barrier_position == 1.0
    assert samples.imbalance == pytest.approx(0.02)
    assert samples.source == "interferometer/exact"
    np.testing.assert_array_equal(samples.delta, mz_delta_density(t, K0, spec, "exact"))
    assert np.all(samples.reference_density > 0)
