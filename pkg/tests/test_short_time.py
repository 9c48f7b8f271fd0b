import numpy as np
import pytest

from deltabarrier.analytic import density, free_gaussian, psi_gaussian, psi_sine, psi_step_coupling
from deltabarrier.errors import DomainError, NoValidWindowError
from deltabarrier.model import BarrierKind, BarrierSpec, Gaussian
from deltabarrier.short_time import (
    density_coefficients,
    expand_gaussian,
    expand_sine,
    expand_step_amplitude,
    expand_step_imaginary,
    expand_step_reflected,
    expand_step_transmitted,
    expansion_horizon,
    gaussian_amplitude_long,
    gaussian_amplitude_short,
    gaussian_short_time_amplitude,
    step_amplitude_coefficients,
    transmitted_density_braces,
    validity_window,
)

K0, LAM, L, X = 30.0, 3.0, 1.0, 2.0
REAL = BarrierSpec(LAM, BarrierKind.REAL, L)
IMAG = BarrierSpec(LAM, BarrierKind.IMAGINARY, L)
ABSENT = REAL.without()
T_DECADE = np.logspace(-5, -4, 8)


def slope(t, err):
    return np.polyfit(np.log(t), np.log(err), 1)[0]


def exact_density(x, t, barrier, k0=K0):
    g = 0 if barrier.is_absent else barrier.coupling
    return density(psi_step_coupling(x, t, k0, g, barrier.position))


def test_density_braces_match_written_form():
    for lam in (0.0, 3.0, 7.5):
        series = expand_step_transmitted(X, K0, BarrierSpec(lam, "real", L))
        np.testing.assert_allclose(series.coefficients, transmitted_density_braces(X, K0, lam), rtol=1e-13)
        assert series.prefactor == pytest.approx(1 / (np.pi * X**2))


def test_barrier_term_inside_braces():
    with_b = expand_step_transmitted(X, K0, REAL).coefficients
    without = expand_step_transmitted(X, K0, ABSENT).coefficients
    assert with_b[0] == without[0] and with_b[1] == without[1]
    assert with_b[2] - without[2] == pytest.approx(LAM / X**2 * (8 / X - LAM), rel=1e-12)


@pytest.mark.parametrize("barrier", [REAL, IMAG, ABSENT], ids=["real", "imaginary", "absent"])
@pytest.mark.parametrize("order", [1, 2, 3])
def test_transmitted_order_consistency(barrier, order):
    series = expand_step_transmitted(X, K0, barrier, order=order)
    exact = exact_density(X, T_DECADE, barrier)
    rel = np.abs(series(T_DECADE) - exact) / exact
    assert slope(T_DECADE, rel) == pytest.approx(order, abs=0.1)


@pytest.mark.parametrize("barrier", [REAL, IMAG, ABSENT], ids=["real", "imaginary", "absent"])
def test_transmitted_amplitude_order(barrier):
    series = expand_step_transmitted(X, K0, barrier, quantity="amplitude")
    g = 0 if barrier.is_absent else barrier.coupling
    exact = psi_step_coupling(X, T_DECADE, K0, g, L)
    assert slope(T_DECADE, np.abs(series(T_DECADE) - exact) / np.abs(exact)) == pytest.approx(3, abs=0.1)


def test_general_amplitude_equals_transmitted_form_past_barrier():
    for x in (1.5, 2.0, 4.0):
        two_term = expand_step_amplitude(x, K0, REAL)
        single = expand_step_transmitted(x, K0, REAL, quantity="amplitude")
        np.testing.assert_allclose(two_term(T_DECADE), single(T_DECADE), rtol=1e-13)


def test_general_amplitude_on_reflected_side():
    t = np.logspace(-5, -3.5, 8)
    for b in (REAL, IMAG):
        series = expand_step_amplitude(0.5, K0, b)
        exact = psi_step_coupling(0.5, t, K0, b.coupling, L)
        assert slope(t, np.abs(series(t) - exact) / np.abs(exact)) == pytest.approx(3, abs=0.1)


def test_imaginary_first_order_coefficient():
    series = expand_step_imaginary(X, K0, LAM, L)
    assert series.coefficients[1] == pytest.approx(2 * (2 * K0 - LAM) / X, rel=1e-13)
    assert series.order == 2
    free = expand_step_imaginary(X, K0, 0.0, L)
    np.testing.assert_allclose(free.coefficients, expand_step_transmitted(X, K0, ABSENT, order=2).coefficients)


def test_imaginary_first_order_vanishes_at_two_k0():
    series = expand_step_imaginary(X, K0, 2 * K0, L)
    assert abs(series.coefficients[1]) < 1e-12


def test_real_vs_imaginary_signature_on_coefficients():
    free = np.array(expand_step_transmitted(X, K0, ABSENT).coefficients)
    real = np.array(expand_step_transmitted(X, K0, REAL).coefficients) - free
    imag = np.array(expand_step_transmitted(X, K0, IMAG).coefficients) - free
    # density = (t/pi x^2) * sum c_n t^n: barrier enters at t^3 (n=2) for real, t^2 (n=1) for imaginary
    assert real[0] == 0 and real[1] == 0 and real[2] != 0
    assert imag[0] == 0 and imag[1] != 0


def test_transmitted_requires_x_beyond_barrier():
    with pytest.raises(DomainError):
        expand_step_transmitted(0.5, K0, REAL)
    with pytest.raises(DomainError):
        expand_step_transmitted(X, K0, REAL, order=4)


def test_reflected_series():
    x = 0.5
    t = np.logspace(-5, -3.5, 8)
    for b in (REAL, IMAG):
        series = expand_step_reflected(x, K0, b)
        exact = exact_density(x, t, b)
        rel = np.abs(series(t) - exact) / exact
        assert slope(t, rel) == pytest.approx(2, abs=0.15)
    term = expand_step_reflected(x, K0, REAL).oscillatory[0]
    assert term.power == 2
    assert term.amplitude == pytest.approx(-2 * LAM / (x * (2 * L - x) ** 2))
    assert term.rate == pytest.approx(L * (L - x))
    assert expand_step_reflected(x, K0, ABSENT).oscillatory == ()


def test_reflected_guard():
    series = expand_step_reflected(0.5, K0, REAL, safety_factor=10)
    assert series.validity_window == (0.0, pytest.approx(0.05))
    with pytest.raises(DomainError):
        series(0.06)
    with pytest.raises(DomainError):
        expand_step_reflected(1.5, K0, REAL)


@pytest.mark.parametrize("barrier", [REAL, IMAG, ABSENT], ids=["real", "imaginary", "absent"])
def test_sine_expansion(barrier):
    exp = expand_sine(X, K0, barrier)
    exact = psi_sine(X, T_DECADE, K0, barrier)
    amp_err = np.abs(exp.amplitude(T_DECADE) - exact) / np.abs(exact)
    assert slope(T_DECADE, amp_err) == pytest.approx(2, abs=0.1)
    rho = np.abs(exact) ** 2
    assert slope(T_DECADE, np.abs(exp.density(T_DECADE) - rho) / rho) >= 0.9
    phase_err = np.abs(np.angle(exact * np.exp(-1j * exp.phase(T_DECADE))))
    assert slope(T_DECADE, phase_err) >= 1.8


def test_sine_density_is_barrier_independent_at_leading_order():
    real = expand_sine(X, K0, REAL).density
    free = expand_sine(X, K0, ABSENT).density
    assert real.prefactor == free.prefactor == pytest.approx(4 * K0**2 / (np.pi * X**4))
    assert real.base_exponent == 3
    np.testing.assert_allclose(real.coefficients, [1.0, 0.0], atol=1e-15)


def test_sine_phase_barrier_term():
    with_b = expand_sine(X, K0, REAL).phase
    free = expand_sine(X, K0, ABSENT).phase
    assert with_b.coefficients[2] == pytest.approx((X * LAM - 6) / X**2)
    t = np.array([1e-4, 1e-3])
    np.testing.assert_allclose(free(t), with_b(t) - LAM * t / X, rtol=1e-13)
    assert with_b.coefficients[:2] == (X * X / 4, -np.pi / 4)


def test_density_coefficients_convolution():
    a = (1.0, 2 + 1j, 0.5j)
    assert density_coefficients(a, 3) == (1.0, 4.0, pytest.approx(abs(2 + 1j) ** 2 + 2 * (0.5j).real))


def test_amplitude_coefficients_written_form():
    a = step_amplitude_coefficients(X, K0, LAM)
    assert a[1] == pytest.approx(2 * (K0 * X - 1j) / X**2 + 1j * LAM / X)


def test_validity_window_examples():
    assert validity_window(10, 0.1, 10, safety_factor=1) == (pytest.approx(0.04), pytest.approx(1.0))
    with pytest.raises(NoValidWindowError):
        validity_window(10, 30, 3, safety_factor=1)
    with pytest.raises(NoValidWindowError):
        validity_window(10, 0.1, 10, safety_factor=10)
    lo, hi = validity_window(10, 0.001, 10, safety_factor=10)
    assert lo < hi
    with pytest.raises(DomainError):
        validity_window(10, 1, 0)


def test_expansion_horizon():
    assert expansion_horizon(2.0, 30.0, 3.0) == pytest.approx(2 / 60)
    assert expansion_horizon(10.0, 0.0, 0.0) == pytest.approx(50.0)


# Gaussian regimes


def test_gaussian_guard():
    with pytest.raises(DomainError, match="sigma"):
        expand_gaussian(1.5, Gaussian(1.0, 5.0), REAL)
    with pytest.raises(DomainError):
        expand_gaussian(0.5, Gaussian(0.05, 1.0), REAL)


def test_gaussian_short_regime_is_time_independent():
    g = Gaussian(0.2, 5.0)
    series = expand_gaussian(1.2, g, REAL, regime="short")
    assert series.base_exponent == 0 and series.order == 1
    t = np.array([1e-5, 1e-4])
    assert series(t)[0] == series(t)[1]
    factor = 1 / (1 - LAM * g.sigma**2 / (4 * 1.2))
    amp = gaussian_amplitude_short(1.2, g, REAL)
    assert amp == pytest.approx(np.sqrt(2) / (np.sqrt(np.pi) * g.sigma) * factor * np.exp(-(1.2**2) / g.sigma**2))
    assert series(1e-5) == pytest.approx(abs(amp) ** 2)


@pytest.mark.parametrize("sigma, x", [(0.5, 1.5), (0.5, 2.0), (0.4, 2.0)])
def test_gaussian_short_regime_matches_exact(sigma, x):
    g = Gaussian(sigma, 0.5)
    b_real, b_imag = BarrierSpec(1.0, "real", L), BarrierSpec(1.0, "imaginary", L)
    for b in (b_real, b_imag):
        exact = abs(psi_gaussian(x, 1e-6, g, b)) ** 2
        approx = expand_gaussian(x, g, b, regime="short")(1e-6)
        # large-argument form of w: corrections of order sigma^2 / x^2
        assert approx == pytest.approx(exact, rel=0.01)


def test_gaussian_short_regime_barrier_factor():
    # the barrier rescales the frozen tail by |1 - g sigma^2 / 4x|^-2
    g, x = Gaussian(0.4, 0.5), 2.0
    free = abs(free_gaussian(x, 1e-6, g.sigma, g.k0)) ** 2
    for b in (BarrierSpec(1.0, "real", L), BarrierSpec(1.0, "imaginary", L)):
        ratio = abs(psi_gaussian(x, 1e-6, g, b)) ** 2 / free
        assert ratio == pytest.approx(1 / abs(1 - b.coupling * g.sigma**2 / (4 * x)) ** 2, rel=2e-3)


def test_gaussian_long_regime_structure():
    g = Gaussian(0.05, 1.0)
    x = 20.0
    real = expand_gaussian(x, g, BarrierSpec(0.5, "real", L))
    imag = expand_gaussian(x, g, BarrierSpec(0.5, "imaginary", L))
    pre = np.exp(-(g.sigma**2) * g.k0**2 / 2) / (2 * np.pi)
    assert real.prefactor == imag.prefactor == pytest.approx(pre)
    assert real.coefficients == (1.0, 0.0, -((0.5 / x) ** 2))
    assert imag.coefficients == (1.0, -2 * 0.5 / x)
    assert real.base_exponent == -1


@pytest.mark.parametrize("kind", ["real", "imaginary"])
def test_gaussian_long_regime_matches_exact(kind):
    # narrow packet: the regime also needs x sigma / t and sigma^2 k0 x / t small
    g = Gaussian(0.02, 1.0)
    x, b = 20.0, BarrierSpec(1.0, kind, L)
    series = expand_gaussian(x, g, b)
    for t in (1.0, 2.0):
        exact = abs(psi_gaussian(x, t, g, b)) ** 2
        assert series(t) == pytest.approx(exact, rel=0.03)
        assert abs(gaussian_amplitude_long(x, t, g, b)) ** 2 == pytest.approx(exact, rel=0.03)


@pytest.mark.parametrize("kind", ["real", "imaginary"])
def test_gaussian_long_regime_barrier_effect(kind):
    g, x, lam = Gaussian(0.02, 1.0), 20.0, 1.0
    b = BarrierSpec(lam, kind, L)
    t = 1.0
    free = abs(free_gaussian(x, t, g.sigma, g.k0)) ** 2
    shift = abs(psi_gaussian(x, t, g, b)) ** 2 / free - 1
    predicted = -((lam * t / x) ** 2) if kind == "real" else -2 * lam * t / x
    assert shift / predicted == pytest.approx(1.0, abs=0.25)


def test_gaussian_large_argument_amplitude():
    g = Gaussian(0.3, 2.0)
    for b in (REAL, IMAG):
        approx = gaussian_short_time_amplitude(3.0, 0.1, g, b)
        exact = psi_gaussian(3.0, 0.1, g, b)
        assert abs(approx - exact) < 0.01 * abs(exact)


def test_gaussian_absent_long_regime_is_free_spreading():
    g = Gaussian(0.02, 1.0)
    series = expand_gaussian(20.0, g, ABSENT)
    exact = abs(free_gaussian(20.0, 2.0, g.sigma, g.k0)) ** 2
    assert series(2.0) == pytest.approx(exact, rel=0.01)
