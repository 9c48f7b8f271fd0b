"""Command-line front end.

    deltabarrier evolve   --preset fig2  --out results/
    deltabarrier expand   --config my.ini
    deltabarrier oracle   --preset oracle
    deltabarrier classify --preset fig5-real

Exit codes: 0 success, 1 invalid input or domain error, 2 usage error,
3 oracle tolerance exceeded, 4 classifier verdict Indeterminate.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .analytic import moshinsky, scattered_step, wavefunction
from .classifier import ClassifierConfig, TransmittedSamples, Verdict, classify
from .config import ScenarioConfig, load_config, load_preset, preset_names
from .errors import ConfigurationError, DomainError, NoValidWindowError, QuadratureError
from .interferometer import InterferometerSpec, mz_delta_density_curve
from .io import write_json, write_table
from .model import BarrierKind, Gaussian, SineFront, StepPlane
from .oracle.validation import compare_absent, compare_gaussian_cn, compare_spectral, standard_point_set
from .short_time import expand_sine, expand_step_reflected, expand_step_transmitted, expansion_horizon

__all__ = ["main", "cmd_evolve", "cmd_expand", "cmd_oracle", "cmd_classify"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_TOLERANCE = 3
EXIT_INDETERMINATE = 4


def _stem(cfg, command):
    return f"{cfg.scenario.name}_{command}"


def cmd_evolve(cfg: ScenarioConfig, out_dir, fmt="csv"):
    """Amplitude and density with and without the barrier over the x-t grid."""
    barrier = cfg.barrier_spec()
    state = cfg.initial_state()
    x, t = cfg.x_grid(), cfg.t_grid()
    if isinstance(state, Gaussian) and not barrier.is_absent and x[0] <= barrier.position:
        raise ConfigurationError("[grid] x_min: the Gaussian solution needs x > L when a barrier is present")
    T, X = np.meshgrid(t, x, indexing="ij")
    psi = wavefunction(X, T, state, barrier).ravel()
    free = wavefunction(X, T, state, barrier.without()).ravel()
    rho, rho_free = np.abs(psi) ** 2, np.abs(free) ** 2
    columns = {
        "x": X.ravel(),
        "t": T.ravel(),
        "re_psi": psi.real,
        "im_psi": psi.imag,
        "density": rho,
        "re_psi_free": free.real,
        "im_psi_free": free.imag,
        "density_free": rho_free,
        "delta_density": rho - rho_free,
    }
    prov = {name: "analytic" for name in columns}
    prov["x"] = prov["t"] = "input"
    report = {"max_abs_delta_density": float(np.max(np.abs(rho - rho_free)))}
    return write_table(out_dir, _stem(cfg, "evolve"), columns, prov, cfg.as_dict(), report, "evolve", fmt)


def _series_for(cfg: ScenarioConfig, safety):
    e = cfg.expand
    k0 = cfg.scenario.k0
    barrier = cfg.barrier_spec()
    if e.kind == "reflected":
        return [expand_step_reflected(e.x, k0, barrier, safety)], "step reflected density"
    if e.kind == "sine":
        return [expand_sine(e.x, k0, barrier).density], "sine density"
    if e.kind == "imaginary":
        barrier = barrier.as_kind(BarrierKind.IMAGINARY)
    series = [expand_step_transmitted(e.x, k0, barrier, order=n) for n in range(1, e.order + 1)]
    return series, "step transmitted density"


def cmd_expand(cfg: ScenarioConfig, out_dir, fmt="csv", safety=None):
    """Series coefficients, exact-vs-series errors and their log-log slopes."""
    safety = cfg.output.safety_factor if safety is None else safety
    e = cfg.expand
    k0 = cfg.scenario.k0
    barrier = cfg.barrier_spec()
    if e.kind == "imaginary":
        barrier = barrier.as_kind(BarrierKind.IMAGINARY)
    series, label = _series_for(cfg, safety)
    t = cfg.t_grid()
    if e.kind == "reflected":
        t_hi = series[0].validity_window[1]
        window_text = f"L(L - x)/t >= {safety:g}"
    else:
        t_hi = expansion_horizon(e.x, k0, barrier.strength) / safety
        window_text = f"t <= min(x/2k0, x/lambda, x^2/2)/{safety:g}"
    if t[-1] > t_hi:
        raise NoValidWindowError(
            f"t_max = {t[-1]:g} lies outside the short-time window ({window_text}, i.e. t <= {t_hi:g}); "
            "lower [grid] t_max"
        )
    state = SineFront(k0) if e.kind == "sine" else StepPlane(k0)
    exact = np.abs(wavefunction(e.x, t, state, barrier)) ** 2

    columns = {"t": t, "exact_density": exact}
    prov = {"t": "input", "exact_density": "analytic"}
    slopes = []
    for s in series:
        name = f"series_order{s.order}"
        approx = s(t)
        resid = np.abs(approx - exact)
        columns[name] = approx
        columns[f"abs_error_order{s.order}"] = resid
        prov[name] = prov[f"abs_error_order{s.order}"] = "expansion"
        ok = resid > 0
        slope = float(np.polyfit(np.log(t[ok]), np.log(resid[ok]), 1)[0]) if ok.sum() >= 2 else float("nan")
        slopes.append(
            {
                "order": s.order,
                "residual_slope": slope,
                "next_omitted_power": s.base_exponent + s.order,
                "passes": bool(slope >= s.base_exponent + s.order - 0.2),
            }
        )
    coeffs = {"order": [], "power": [], "coefficient_re": [], "coefficient_im": []}
    top = series[-1]
    for n, c in enumerate(top.coefficients):
        c = complex(c) * complex(top.prefactor)
        coeffs["order"].append(n)
        coeffs["power"].append(top.base_exponent + n)
        coeffs["coefficient_re"].append(c.real)
        coeffs["coefficient_im"].append(c.imag)
    oscillatory = [
        {"power": o.power, "amplitude": o.amplitude * float(np.real(top.prefactor)), "rate": o.rate, "phase": o.phase}
        for o in top.oscillatory
    ]
    report = {"series": label, "slopes": slopes, "oscillatory_terms": oscillatory, "t_window_max": t_hi}
    stem = _stem(cfg, "expand")
    written = write_table(out_dir, stem, columns, prov, cfg.as_dict(), report, "expand", fmt)
    written += write_table(
        out_dir,
        stem + "_coefficients",
        coeffs,
        {k: ("input" if k in ("order", "power") else "expansion") for k in coeffs},
        cfg.as_dict(),
        {"series": label},
        "expand",
        fmt,
    )
    return written, report


def cmd_oracle(cfg: ScenarioConfig, out_dir):
    """Cross-validation suite; returns the report and whether every check passed."""
    o = cfg.oracle
    b = cfg.barrier_spec()
    strength = b.strength if b.strength > 0 else 3.0
    points = standard_point_set(cfg.scenario.k0, strength, b.position)
    reports = [
        compare_spectral(points, o.spectral_tolerance),
        compare_absent(points),
    ]
    for kind in (BarrierKind.REAL, BarrierKind.IMAGINARY):
        reports.append(
            compare_gaussian_cn(
                Gaussian(o.sigma, o.k0),
                strength,
                b.position,
                kind,
                o.dx,
                o.dt,
                o.x_min,
                o.x_max,
                tolerance=o.cn_tolerance,
            )
        )
    passed = all(r.passed for r in reports)
    doc = {
        "schema": "deltabarrier.oracle_report",
        "schema_version": 1,
        "config": cfg.as_dict(),
        "checks": [r.as_dict() for r in reports],
        "passed": passed,
    }
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    path = write_json(Path(out_dir) / f"{_stem(cfg, 'oracle')}.json", doc)
    return [path], reports, passed


def build_samples(cfg: ScenarioConfig) -> TransmittedSamples:
    """Delta rho(t) for the classifier from the interferometer or the bare transmitted density."""
    barrier = cfg.barrier_spec()
    k0 = cfg.scenario.k0
    t = cfg.t_grid()
    c = cfg.classifier
    if c.source == "interferometer":
        i = cfg.interferometer
        spec = _checked_spec(lambda: InterferometerSpec(i.c1, barrier, i.x))
        return mz_delta_density_curve(t, spec, k0, i.model)
    if not c.x > barrier.position:
        raise ConfigurationError(f"[classifier] x = {c.x} must exceed the barrier position {barrier.position}")
    g = 0j if barrier.is_absent else barrier.coupling
    free = moshinsky(c.x, t, k0)
    scat = scattered_step(c.x, t, k0, g, barrier.position)
    delta = 2 * np.real(free * np.conj(scat)) + np.abs(scat) ** 2
    return TransmittedSamples(t, delta, np.abs(free) ** 2, c.x, barrier.position, k0, barrier.strength, None, "direct")


def _checked_spec(build):
    try:
        return build()
    except ValueError as exc:
        raise ConfigurationError(f"[interferometer] {exc}") from exc


def classifier_config(cfg: ScenarioConfig, safety=None) -> ClassifierConfig:
    c = cfg.classifier
    window = None
    if (c.t_window_min, c.t_window_max) != (0.0, 0.0):
        window = (c.t_window_min, c.t_window_max)
    return ClassifierConfig(
        real_band=c.real_band,
        imaginary_band=c.imaginary_band,
        r2_min=c.r2_min,
        noise_floor=c.noise_floor,
        safety_factor=cfg.output.safety_factor if safety is None else safety,
        window=window,
    )


def cmd_classify(cfg: ScenarioConfig, out_dir, fmt="csv", safety=None):
    samples = build_samples(cfg)
    result = classify(samples, classifier_config(cfg, safety))
    model = cfg.interferometer.model if cfg.classifier.source == "interferometer" else "exact"
    prov = {"t": "input", "delta_density": "analytic" if model == "exact" else "expansion", "reference_density": "analytic"}
    columns = {"t": samples.t, "delta_density": samples.delta, "reference_density": samples.reference_density}
    written = write_table(
        out_dir, _stem(cfg, "classify"), columns, prov, cfg.as_dict(), result.as_dict(), "classify", fmt
    )
    return written, result


def _parser():
    p = argparse.ArgumentParser(prog="deltabarrier", description="Short-time scattering off a delta barrier.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, text in (
        ("evolve", "amplitude and density with/without the barrier"),
        ("expand", "short-time series, coefficients and residual slopes"),
        ("oracle", "cross-validate closed forms against the numerical oracles"),
        ("classify", "classify the barrier from short-time transmitted data"),
    ):
        s = sub.add_parser(name, help=text)
        src = s.add_mutually_exclusive_group()
        src.add_argument("--config", help="INI scenario file")
        src.add_argument("--preset", help=f"built-in scenario ({', '.join(preset_names())})")
        s.add_argument("--out", default=".", help="output directory (default: current)")
        s.add_argument("--safety-factor", type=float, default=None, help="factor applied to every '<<' window bound")
        s.add_argument("--format", choices=("csv", "json"), default=None, help="table format (default from config)")
    sub.add_parser("presets", help="list built-in presets")
    return p


def _load(args) -> ScenarioConfig:
    if args.config:
        cfg = load_config(args.config)
    elif args.preset:
        cfg = load_preset(args.preset)
    else:
        cfg = ScenarioConfig().validate()
    if args.safety_factor is not None:
        if not args.safety_factor >= 1:
            raise ConfigurationError("--safety-factor must be >= 1")
        cfg.output.safety_factor = args.safety_factor
    if args.format is not None:
        cfg.output.format = args.format
    return cfg


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "presets":
        print("\n".join(preset_names()))
        return EXIT_OK
    try:
        cfg = _load(args)
        fmt = cfg.output.format
        if args.command == "evolve":
            written = cmd_evolve(cfg, args.out, fmt)
            code = EXIT_OK
        elif args.command == "expand":
            written, report = cmd_expand(cfg, args.out, fmt)
            for s in report["slopes"]:
                print(
                    f"order {s['order']}: residual slope {s['residual_slope']:.3f} "
                    f"(next omitted power {s['next_omitted_power']:g})"
                )
            code = EXIT_OK
        elif args.command == "oracle":
            written, reports, passed = cmd_oracle(cfg, args.out)
            for r in reports:
                status = "ok" if r.passed else "FAIL"
                print(f"{r.name}: max {r.max_error:.3e} mean {r.mean_error:.3e} (tol {r.tolerance:g}) {status}")
            code = EXIT_OK if passed else EXIT_TOLERANCE
        else:
            written, result = cmd_classify(cfg, args.out, fmt)
            fit = result.fit
            exponent = "n/a" if fit is None else f"{fit.exponent:.4f} (r^2 {fit.r_squared:.5f})"
            window = "n/a" if result.window is None else f"[{result.window[0]:.6g}, {result.window[1]:.6g}]"
            print(f"verdict: {result.verdict.value}")
            print(f"exponent: {exponent}")
            print(f"window: {window}")
            if result.reason:
                print(f"note: {result.reason}")
            code = EXIT_INDETERMINATE if result.verdict is Verdict.INDETERMINATE else EXIT_OK
    except (ConfigurationError, DomainError, NoValidWindowError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for path in written:
        print(f"wrote {path}")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
