"""Acceptance checks for the advertised guarantees of the package.

Each test evaluates one criterion at its stated tolerance and appends a
single PASS/FAIL line to the terminal summary (see conftest).  Two
criteria fail by design and the failures are kept honest rather than
masked:

* oracle equivalence on the 30 s monitored window (4b): the effective
  stiffness advances about 3.3e7 rad of phase over that window, so both
  the direct integration and any slicing the oracle can afford are out
  of reach; the test quantifies the gap and fails with the analysis.
* series residual decrease (6): the measured maximum residual of the
  truncated cosine series grows, not shrinks, as terms are added at the
  reference (p, q), because each added harmonic multiplies the
  coefficients by roughly (p - m^2)/q, which is ~16 at m = 3 and ~45
  at m = 5; the test records the measured residuals and fails.
"""

import cmath
import math
import time
from dataclasses import replace

import numpy as np
import pytest

import conftest
from conftest import constant_frequency_spec, scaled_inputs

from paulpath import (
    Axis,
    BoundaryConditions,
    MeasurementConfig,
    PhaseBudgetError,
    PropagatorInputs,
    TrapParameters,
    TruncationStiffness,
    cli,
    derive_frequency_coefficients,
    dimensionless,
    discrete_propagator,
    effective_frequency,
    evaluate_f,
    fluctuation_prefactor_from_f,
    fluctuation_prefactor_robust,
    integrate_mathieu_ode,
    mathieu_series,
    render,
    residual_bound,
    residual_max_magnitude,
    restricted_propagator,
    richardson,
    with_resolution,
)
from paulpath import closed_form_prefactor
from paulpath.cli import axis_inputs, check_phase_budget, load_scenario
from paulpath.records import ConstantRecord, SampledRecord, SinusoidRecord

SHORT = "barium_short_window.scenario"
REFERENCE = "barium_reference.scenario"


def _report(number: str, name: str, ok: bool, detail: str = "") -> bool:
    verdict = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {number} {name}: {verdict}"
    if detail:
        line += f" ({detail})"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _reference_dimensionless(axis: Axis):
    scenario = load_scenario(REFERENCE)
    meas = scenario.measurement_x if axis is Axis.X else scenario.measurement_z
    spec = effective_frequency(
        derive_frequency_coefficients(scenario.trap, axis), meas, scenario.trap
    )
    return dimensionless(spec)


def test_acceptance_1_alpha_identification():
    alpha = _reference_dimensionless(Axis.X).alpha
    ok = abs(alpha.real - (-2.62)) <= 0.01 and 2.7e-11 <= abs(alpha.imag) <= 2.9e-11
    assert _report(
        "1", "alpha identification", ok,
        f"alpha = {alpha.real:.6f} {alpha.imag:+.3e}j",
    )


def test_acceptance_2_beta_magnitude():
    beta = _reference_dimensionless(Axis.Z).alpha
    ok = 1.01 <= abs(beta.real) <= 1.03 and 2.7e-11 <= abs(beta.imag) <= 2.9e-11
    assert _report(
        "2", "beta magnitude", ok,
        f"beta = {beta.real:.6f} {beta.imag:+.3e}j, sign of Re not asserted",
    )


def test_acceptance_3_harmonic_prefactor():
    worst = 0.0
    for w0, T in ((1.3, 0.9), (0.7, 1.8)):
        params, spec = constant_frequency_spec(w0=w0)
        analytic = cmath.sqrt(
            params.mass * w0 / (2j * math.pi * params.hbar * math.sin(w0 * T))
        )
        for value in (
            fluctuation_prefactor_robust(params, spec, (0.0, T)),
            fluctuation_prefactor_from_f(params, spec, (0.0, T), f_source="ode"),
        ):
            worst = max(worst, abs(value - analytic) / abs(analytic))
    assert _report(
        "3", "harmonic-limit prefactor", worst <= 1e-10,
        f"worst relative deviation {worst:.2e}",
    )


def _random_scenario(rng, kind):
    """Scaled-unit monitored scenario with |p|, |q| <= 1 by construction."""
    omega = rng.uniform(1.5, 3.0)
    q = rng.uniform(0.15, 0.9) * rng.choice([-1.0, 1.0])
    p_re = rng.uniform(-0.8, 0.8)
    im_p = rng.uniform(0.02, 0.25)
    m = rng.uniform(0.5, 2.0)
    T = 2.0 * rng.uniform(1.2, 2.8) / omega
    # resolution chosen so Im u_tilde = -4 hbar/(m T da^2) = -im_p*omega^2/4
    da = math.sqrt(16.0 / (m * T * omega**2 * im_p))
    u = p_re * omega**2 / 4.0
    v = q * omega**2 / 2.0
    params = TrapParameters(
        charge=1.0, mass=m, half_gap=1.0,
        dc_voltage=u * m, ac_voltage=v * m, drive_omega=omega, hbar=1.0,
    )
    meas = MeasurementConfig(t_start=0.0, t_end=T, resolution=da)
    coeffs = derive_frequency_coefficients(params, Axis.X)
    x_c = math.sqrt(1.0 / (m * omega))
    bc = BoundaryConditions(
        x_start=rng.uniform(-1, 1) * x_c, x_end=rng.uniform(-1, 1) * x_c,
        t_start=0.0, t_end=T,
    )
    A = rng.uniform(0.2, 0.8) * da
    if kind == "constant":
        spec_r = ConstantRecord(A)
    elif kind == "sinusoid":
        spec_r = SinusoidRecord(A, rng.uniform(0.3, 1.5) * omega,
                                rng.uniform(0, 2 * math.pi))
    else:
        spec_r = SampledRecord(tuple(A * rng.standard_normal(17)))
    rec = render(spec_r, meas, 2001)
    return PropagatorInputs(params=params, coeffs=coeffs, meas=meas,
                            record=rec, bc=bc)


def test_acceptance_4a_oracle_equivalence_randomized():
    t0 = time.time()
    rng = np.random.default_rng(0)
    kinds = ["constant", "sinusoid", "samples", "constant", "sinusoid"]
    worst_dm = worst_dp = 0.0
    for kind in kinds:
        inputs = _random_scenario(rng, kind)
        dl = dimensionless(effective_frequency(inputs.coeffs, inputs.meas,
                                               inputs.params))
        assert abs(dl.p) <= 1.0 and abs(dl.q) <= 1.0
        res = restricted_propagator(inputs)
        # stay away from caustics: the fluctuation solution must keep a
        # margin over its peak everywhere past the initial rise
        d = np.abs(res.classical.d_function)
        assert d[int(0.05 * d.size):].min() / d.max() >= 0.02, kind
        extr, _ = richardson(
            discrete_propagator(inputs, 2048), discrete_propagator(inputs, 4096)
        )
        dm = abs(res.log_amplitude.real - extr.real) / max(abs(extr.real), 1e-30)
        dp = abs(res.log_amplitude.imag - extr.imag)
        worst_dm, worst_dp = max(worst_dm, dm), max(worst_dp, dp)
    elapsed = time.time() - t0
    ok = worst_dm <= 1e-3 and worst_dp <= 1e-3 and elapsed < 30.0
    assert _report(
        "4a", "oracle equivalence, randomized scenarios", ok,
        f"worst dlogmod {worst_dm:.2e}, worst dphase {worst_dp:.2e} rad, "
        f"{elapsed:.1f} s",
    )


def test_acceptance_4b_oracle_equivalence_reference_window():
    # The bundled 30 s reference scenario cannot be driven through either
    # side of the comparison at the stated tolerances, so this criterion
    # fails and the numbers below document why.
    scenario = load_scenario(REFERENCE)
    inputs = axis_inputs(scenario, Axis.X)
    spec = effective_frequency(inputs.coeffs, inputs.meas, inputs.params)
    T = inputs.meas.duration
    grid = np.linspace(inputs.bc.t_start, inputs.bc.t_end, 4097)
    phase_est = T * math.sqrt(float(np.max(np.abs(spec.w_squared(grid)))))
    with pytest.raises(PhaseBudgetError):
        check_phase_budget(inputs, scenario.numerics.phase_budget_rad)
    # the oracle side is cheap to evaluate but nowhere near convergent:
    # at N = 4096 a single slice spans ~2.3e3 drive periods
    v1 = discrete_propagator(inputs, 2048)
    v2 = discrete_propagator(inputs, 4096)
    _, err_est = richardson(v1, v2)
    rad_per_slice = inputs.params.drive_omega * T / 4096.0
    nyquist_n = inputs.params.drive_omega * T / math.pi
    ok = False
    assert _report(
        "4b", "oracle equivalence, 30 s reference window", ok,
        f"pipeline phase estimate {phase_est:.2e} rad exceeds the "
        f"{scenario.numerics.phase_budget_rad:.0e} rad budget; oracle at "
        f"N=4096 advances {rad_per_slice:.2e} rad per slice "
        f"(Nyquist needs N > {nyquist_n:.1e}), Richardson error estimate "
        f"{err_est:.2e}",
    ), (
        "the 30 s window needs ~1e12 slices for the stated tolerance and "
        "hours of adaptive integration for the pipeline side; both are far "
        "outside the 30 s runtime budget, so the criterion fails honestly"
    )


def test_acceptance_5_free_particle_oracle():
    T, x0, x1 = 2.0, -0.3, 0.7
    inputs = scaled_inputs(u=0.0, v=0.0, T=T, x_start=x0, x_end=x1)
    m, hbar = inputs.params.mass, inputs.params.hbar
    expected = 0.5 * cmath.log(m / (2j * math.pi * hbar * T)) + 1j * m * (
        x1 - x0
    ) ** 2 / (2 * hbar * T)
    worst = max(
        abs(discrete_propagator(inputs, n) - expected) / abs(expected)
        for n in (2, 16, 256)
    )
    assert _report(
        "5", "free-particle oracle exactness", worst <= 1e-12,
        f"worst relative deviation {worst:.2e}",
    )


def test_acceptance_6_series_residual_decrease():
    params_dl = _reference_dimensionless(Axis.X)
    maxima = [
        residual_max_magnitude(mathieu_series(params_dl, n)) for n in (2, 3, 4)
    ]
    clause_decreasing = maxima[0] > maxima[1] > maxima[2]

    coeffs4 = mathieu_series(params_dl, 4)
    bound4 = residual_bound(coeffs4)
    t = np.linspace(0.0, 0.5, 513)
    f_series = evaluate_f(coeffs4, t)
    f0 = complex(sum(coeffs4.coefficients))
    sol = integrate_mathieu_ode(params_dl, (0.0, 0.5), (f0, 0.0))
    f_ode = sol.evaluate(t)[0]
    sup_diff = float(np.max(np.abs(f_series - f_ode)))
    clause_ode = sup_diff <= 2.0 * bound4

    ok = clause_decreasing and clause_ode
    assert _report(
        "6", "series residual decrease", ok,
        f"max residuals for 2/3/4 terms: {maxima[0]:.3g} / {maxima[1]:.3g} / "
        f"{maxima[2]:.3g} (grow, not shrink); 4-term vs ODE sup-diff "
        f"{sup_diff:.3g} vs bound {2.0 * bound4:.3g} "
        f"({'within' if clause_ode else 'outside'})",
    ), (
        "each added harmonic multiplies the series coefficients by roughly "
        "(p - m^2)/q, i.e. ~16x at m = 3 and ~45x at m = 5 for q = 0.549, "
        "so the residual maxima grow by ~40-90x per term and the decrease "
        "clause cannot hold at these parameters"
    )


def test_acceptance_7_measurement_off_limit():
    scenario = load_scenario(SHORT)
    worst = 0.0
    for axis in (Axis.X, Axis.Z):
        inputs = axis_inputs(scenario, axis)
        wide = replace(inputs, meas=with_resolution(inputs.meas, 1.0e3))
        off = replace(inputs, meas=with_resolution(inputs.meas, math.inf))
        la = restricted_propagator(wide).log_amplitude
        lb = restricted_propagator(off).log_amplitude
        worst = max(worst, abs(la - lb) / abs(lb))
    assert _report(
        "7", "measurement-off limit", worst <= 1e-6,
        f"worst relative deviation {worst:.2e} at resolution 1e3 m",
    )


def test_acceptance_8_closed_form_reconciliation():
    scenario = load_scenario(REFERENCE)
    trap = scenario.trap
    spec = effective_frequency(
        derive_frequency_coefficients(trap, Axis.X),
        scenario.measurement_x,
        trap,
    )
    coeffs = mathieu_series(dimensionless(spec), n_terms=2)
    stiff = TruncationStiffness(coefficients=coeffs, drive_omega=trap.drive_omega)
    windows = [(0.05, 0.35), (0.48, 1.40), (math.pi - 1.35, math.pi - 0.60)]
    worst = 0.0
    for a, b in windows:
        window = (2.0 * a / trap.drive_omega, 2.0 * b / trap.drive_omega)
        value = closed_form_prefactor(trap, spec, window, variant="corrected")
        robust = fluctuation_prefactor_robust(trap, stiff, window)
        worst = max(worst, abs(value - robust) / abs(robust))
    assert _report(
        "8", "closed-form prefactor reconciliation", worst <= 1e-6,
        f"corrected variant, worst relative deviation {worst:.2e} "
        f"over {len(windows)} windows",
    )


def test_acceptance_9_sweep_determinism(tmp_path):
    argv = [
        "sweep", "--scenario", SHORT, "--tol", "1e-9",
        "--param", "record.amplitude_m", "--values", "0.0,5.0e-7,1.0e-6",
    ]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    rc1 = cli.main(argv + ["--out", str(out1)])
    rc2 = cli.main(argv + ["--out", str(out2), "--threads", "2"])
    ok = rc1 == 0 and rc2 == 0 and out1.read_bytes() == out2.read_bytes()
    assert _report(
        "9", "sweep determinism", ok,
        f"{len(out1.read_bytes())} identical bytes over 3 sweep points",
    )
