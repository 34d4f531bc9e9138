"""Moment-equation integrator tests.

The independent reference for the integrator is the closed Lyapunov
solution of dV/dt = A V + V A^T + D for constant A, D, evaluated through
the eigendecomposition of A (elementwise in the eigenbasis, with expm1
for the stiff small-rate limit).
"""

import math

import numpy as np
import pytest

from magnomech import metrics, moments

TWO_PI = 2.0 * math.pi
KAPPA = TWO_PI * 500e6

# pulse areas of the default transfer and entangling magnon pulses
AREA_TRANSFER = 2.0 * (TWO_PI * 10e6) ** 2 * 40e-9 / KAPPA
AREA_ENTANGLE = 2.0 * (TWO_PI * 10e6) ** 2 * 30e-9 / KAPPA


def lyapunov_solution(a, d, v0, t):
    """V(t) for constant drift/diffusion via the eigenbasis of the drift."""
    lam, p = np.linalg.eig(a)
    pinv = np.linalg.inv(p)
    d_eig = pinv @ d @ pinv.T
    rates = lam[:, None] + lam[None, :]
    # expm1 keeps accuracy when |rate * t| is tiny; the degenerate
    # rate -> 0 entry tends to t
    safe = np.where(rates == 0, 1.0, rates)
    phi = np.where(np.abs(rates) > 1e-30, np.expm1(rates * t) / safe, t)
    eat = p @ np.diag(np.exp(lam * t)) @ pinv
    return (eat @ v0 @ eat.T + p @ (d_eig * phi) @ p.T).real


class TestCovarianceState:
    def test_vacuum(self):
        s = moments.CovarianceState.vacuum(2)
        assert s.n_modes == 2
        np.testing.assert_array_equal(s.mean, np.zeros(4))
        np.testing.assert_array_equal(s.cm, np.eye(4))
        assert s.occupation(0) == 0.0

    def test_thermal_occupation(self):
        s = moments.CovarianceState.thermal([0.0, 2.5])
        assert s.occupation(0) == pytest.approx(0.0, abs=1e-15)
        assert s.occupation(1) == pytest.approx(2.5)

    def test_occupation_includes_displacement(self):
        s = moments.CovarianceState([2.0, 0.0], np.eye(2))
        # coherent state alpha: mean x = 2 alpha, <n> = |alpha|^2
        assert s.occupation(0) == pytest.approx(1.0)

    def test_block_extracts_modes(self):
        cm = np.diag([1.0, 1.0, 3.0, 3.0, 5.0, 5.0])
        s = moments.CovarianceState(np.arange(6.0), cm)
        sub = s.block([2, 0])
        np.testing.assert_array_equal(sub.mean, [4.0, 5.0, 0.0, 1.0])
        np.testing.assert_array_equal(sub.cm, np.diag([5.0, 5.0, 1.0, 1.0]))

    def test_asymmetric_rejected(self):
        cm = np.eye(2)
        cm[0, 1] = 1e-6
        with pytest.raises(ValueError, match="asymmetric"):
            moments.CovarianceState(np.zeros(2), cm)

    def test_unphysical_rejected(self):
        with pytest.raises(ValueError, match="unphysical"):
            moments.CovarianceState(np.zeros(2), 0.1 * np.eye(2))

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError, match="shape"):
            moments.CovarianceState(np.zeros(3), np.eye(3))


class TestDrives:
    def test_resonant_amplitude(self):
        drive = moments.DriveSpec(power_w=1e-3, frequency=TWO_PI * 193.4e12,
                                  external_linewidth=KAPPA / 2.0)
        out = moments.drive_amplitude(drive, KAPPA)
        # on resonance <a> = 2 E / kappa, real and positive
        assert out.amplitude.imag == 0.0
        assert out.amplitude.real == pytest.approx(2.0 * out.pump_rate / KAPPA)

    def test_detuning_reduces_amplitude(self):
        drive = moments.DriveSpec(power_w=1e-3, frequency=TWO_PI * 193.4e12,
                                  external_linewidth=KAPPA / 2.0,
                                  detuning=KAPPA)
        res = moments.drive_amplitude(
            moments.DriveSpec(power_w=1e-3, frequency=TWO_PI * 193.4e12,
                              external_linewidth=KAPPA / 2.0), KAPPA)
        det = moments.drive_amplitude(drive, KAPPA)
        expected = abs(res.amplitude) / math.sqrt(1.0 + (2.0) ** 2)
        assert abs(det.amplitude) == pytest.approx(expected)

    def test_effective_coupling_accepts_both_forms(self):
        intr = moments.IntracavityDrive(pump_rate=1.0, amplitude=3.0 + 4.0j)
        assert moments.effective_coupling(10.0, intr) == pytest.approx(50.0)
        assert moments.effective_coupling(10.0, 3.0 + 4.0j) == pytest.approx(50.0)

    def test_drive_validation(self):
        with pytest.raises(ValueError, match="power_w"):
            moments.DriveSpec(power_w=-1.0, frequency=1.0, external_linewidth=1.0)
        with pytest.raises(ValueError, match="frequency"):
            moments.DriveSpec(power_w=1.0, frequency=0.0, external_linewidth=1.0)
        with pytest.raises(ValueError, match="external_linewidth"):
            moments.DriveSpec(power_w=1.0, frequency=1.0, external_linewidth=0.0)
        drive = moments.DriveSpec(power_w=1.0, frequency=1.0, external_linewidth=1.0)
        with pytest.raises(ValueError, match="total_linewidth"):
            moments.drive_amplitude(drive, 0.0)


class TestTemporalMode:
    @pytest.mark.parametrize("ctor", [
        moments.TemporalMode.antistokes_input,
        moments.TemporalMode.antistokes_output,
        moments.TemporalMode.stokes_input,
        moments.TemporalMode.stokes_output,
    ])
    def test_unit_norm(self, ctor):
        mode = ctor(2.0 * (TWO_PI * 10e6) ** 2 / KAPPA, 40e-9)
        s = np.linspace(0.0, mode.duration, 20001)
        norm = np.trapezoid(mode.weight(s) ** 2, s)
        assert norm == pytest.approx(1.0, rel=1e-8)

    def test_signs(self):
        assert moments.TemporalMode.antistokes_output(1.0, 1.0).sign == -1
        assert moments.TemporalMode.antistokes_input(1.0, 1.0).sign == +1
        assert moments.TemporalMode.stokes_output(1.0, 1.0).sign == +1
        assert moments.TemporalMode.stokes_input(1.0, 1.0).sign == -1

    def test_validation(self):
        with pytest.raises(ValueError, match="rate and duration"):
            moments.TemporalMode(0.0, 1.0, "in", 1)
        with pytest.raises(ValueError, match="direction"):
            moments.TemporalMode(1.0, 1.0, "sideways", 1)
        with pytest.raises(ValueError, match="sign"):
            moments.TemporalMode(1.0, 1.0, "in", 2)


class TestBuildDrift:
    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown drift kind"):
            moments.build_drift("bogus", cavity_linewidth=1.0, coupling=0.1)

    def test_full_model_needs_frequencies(self):
        with pytest.raises(ValueError, match="mech_freq and detuning"):
            moments.build_drift("optomech_full", cavity_linewidth=1.0,
                                coupling=0.1)

    def test_rate_validation(self):
        with pytest.raises(ValueError, match="coupling"):
            moments.build_drift("magnonic_antistokes", cavity_linewidth=1.0,
                                coupling=-0.1)
        with pytest.raises(ValueError, match="cavity_linewidth"):
            moments.build_drift("magnonic_antistokes", cavity_linewidth=0.0,
                                coupling=0.1)
        with pytest.raises(ValueError, match="thermal_occupation"):
            moments.build_drift("magnonic_antistokes", cavity_linewidth=1.0,
                                coupling=0.1, thermal_occupation=-1.0)

    @pytest.mark.parametrize("kind", ["magnonic_antistokes", "optomech_red_rwa"])
    def test_beamsplitter_kinds_preserve_vacuum(self, kind):
        dd = moments.build_drift(kind, cavity_linewidth=KAPPA,
                                 coupling=0.02 * KAPPA)
        out = moments.integrate(moments.CovarianceState.vacuum(2), dd, 40e-9,
                                moments.default_timestep(KAPPA))
        np.testing.assert_allclose(out.cm, np.eye(4), atol=1e-12)

    @pytest.mark.parametrize("kind", ["magnonic_stokes", "optomech_blue_rwa"])
    def test_parametric_kinds_grow_from_vacuum(self, kind):
        dd = moments.build_drift(kind, cavity_linewidth=KAPPA,
                                 coupling=0.02 * KAPPA)
        out = moments.integrate(moments.CovarianceState.vacuum(2), dd, 40e-9,
                                moments.default_timestep(KAPPA))
        assert out.occupation(0) > 1e-3
        assert out.occupation(1) > 1e-3

    def test_thermal_occupation_enters_diffusion(self):
        dd = moments.build_drift("magnonic_antistokes", cavity_linewidth=KAPPA,
                                 coupling=0.0, matter_linewidth=TWO_PI * 1e6,
                                 thermal_occupation=2.0)
        assert dd.diffusion[2, 2] == pytest.approx(TWO_PI * 1e6 * 5.0)
        assert dd.diffusion[0, 0] == pytest.approx(KAPPA)

    def test_full_model_drift_is_time_dependent(self):
        dd = moments.build_drift("optomech_full", cavity_linewidth=KAPPA,
                                 coupling=0.02 * KAPPA,
                                 mech_freq=TWO_PI * 5.3e9,
                                 detuning=TWO_PI * 5.3e9)
        assert not dd.is_static
        a0 = dd.drift_at(0.0)
        a1 = dd.drift_at(1e-11)
        assert np.max(np.abs(a0 - a1)) > 0.0


class TestIntegrate:
    @pytest.mark.parametrize("ratio,tol", [(0.02, 1e-12), (0.1, 1e-7)])
    def test_matches_closed_lyapunov_antistokes(self, ratio, tol):
        g = ratio * KAPPA
        tau = AREA_TRANSFER / (2.0 * g * g / KAPPA)
        dd = moments.build_drift("magnonic_antistokes", cavity_linewidth=KAPPA,
                                 coupling=g, matter_linewidth=TWO_PI * 1e6,
                                 thermal_occupation=0.3)
        init = moments.CovarianceState.thermal([0.0, 1.0])
        out = moments.integrate(init, dd, tau,
                                moments.default_timestep(KAPPA, 2.0 * g * g / KAPPA))
        ref = lyapunov_solution(dd.drift, dd.diffusion, init.cm, tau)
        assert np.max(np.abs(out.cm - ref)) < tol

    def test_matches_closed_lyapunov_stokes(self):
        g = 0.02 * KAPPA
        tau = AREA_ENTANGLE / (2.0 * g * g / KAPPA)
        dd = moments.build_drift("magnonic_stokes", cavity_linewidth=KAPPA,
                                 coupling=g)
        init = moments.CovarianceState.vacuum(2)
        out = moments.integrate(init, dd, tau, moments.default_timestep(KAPPA))
        ref = lyapunov_solution(dd.drift, dd.diffusion, init.cm, tau)
        assert np.max(np.abs(out.cm - ref)) < 1e-12

    def test_step_halving_converges(self):
        g = 0.1 * KAPPA
        tau = AREA_TRANSFER / (2.0 * g * g / KAPPA)
        dd = moments.build_drift("magnonic_antistokes", cavity_linewidth=KAPPA,
                                 coupling=g)
        init = moments.CovarianceState.thermal([0.0, 1.0])
        dt = moments.default_timestep(KAPPA)
        coarse = moments.integrate(init, dd, tau, dt)
        fine = moments.integrate(init, dd, tau, dt / 2.0)
        assert np.max(np.abs(coarse.cm - fine.cm)) < 1e-6

    def test_argument_validation(self):
        dd = moments.build_drift("magnonic_antistokes", cavity_linewidth=1.0,
                                 coupling=0.1)
        init = moments.CovarianceState.vacuum(2)
        with pytest.raises(ValueError, match="duration"):
            moments.integrate(init, dd, 0.0, 0.1)
        with pytest.raises(ValueError, match="dt"):
            moments.integrate(init, dd, 1.0, 0.0)

    def test_blowup_raises(self):
        # blue-detuned instability: 4 G^2 > kappa * gamma with no damping
        dd = moments.build_drift("optomech_blue_rwa", cavity_linewidth=KAPPA,
                                 coupling=0.4 * KAPPA)
        init = moments.CovarianceState.vacuum(2)
        with pytest.raises(RuntimeError, match="blew up"):
            moments.integrate(init, dd, 1e-6, moments.default_timestep(KAPPA),
                              norm_bound=1e6)

    def test_uncertainty_violation_raises(self):
        # pure contraction with no diffusion squeezes below vacuum
        dd = moments.DriftDiffusion(-np.eye(2), np.zeros((2, 2)))
        init = moments.CovarianceState.vacuum(1)
        with pytest.raises(RuntimeError, match="unphysical"):
            moments.integrate(init, dd, 10.0, 0.01, check_every=100)

    def test_default_timestep(self):
        assert moments.default_timestep(10.0, 2.0, 0.0) == pytest.approx(
            moments.DT_SAFETY / 10.0)
        with pytest.raises(ValueError):
            moments.default_timestep(0.0)


class TestValidateAdiabatic:
    """Frozen sweep values; the integration is deterministic."""

    def test_antistokes_rows(self):
        rows = moments.validate_adiabatic(KAPPA, AREA_TRANSFER,
                                          (0.005, 0.02, 0.1))
        expected = [
            (0.005, 0.181991040929, 0.000808062832202),
            (0.02, 0.179771076027, 0.0129964157285),
            (0.1, 0.121437201325, 0.333268979523),
        ]
        closed = 0.182138220055
        for row, (ratio, integ, err) in zip(rows, expected):
            assert row.coupling_ratio == ratio
            assert row.value_closed_form == pytest.approx(closed, rel=1e-9)
            assert row.value_integrated == pytest.approx(integ, rel=1e-9)
            assert row.rel_error == pytest.approx(err, rel=1e-6)

    def test_stokes_rows(self):
        rows = moments.validate_adiabatic(KAPPA, AREA_ENTANGLE,
                                          (0.005, 0.02, 0.1),
                                          process="stokes")
        expected = [
            (0.005, 0.162509953657, 0.00153598897973),
            (0.02, 0.158781106355, 0.0244460923291),
            (0.1, 0.0855501610062, 0.474378307423),
        ]
        closed = 0.162759951148
        for row, (ratio, integ, err) in zip(rows, expected):
            assert row.coupling_ratio == ratio
            assert row.value_closed_form == pytest.approx(closed, rel=1e-9)
            assert row.value_integrated == pytest.approx(integ, rel=1e-9)
            assert row.rel_error == pytest.approx(err, rel=1e-6)

    def test_error_grows_with_coupling(self):
        for process in ("antistokes", "stokes"):
            rows = moments.validate_adiabatic(KAPPA, AREA_TRANSFER,
                                              (0.005, 0.02, 0.1),
                                              process=process)
            errs = [row.rel_error for row in rows]
            assert errs == sorted(errs)

    def test_validation(self):
        with pytest.raises(ValueError, match="process"):
            moments.validate_adiabatic(KAPPA, 0.1, (0.02,), process="raman")
        with pytest.raises(ValueError, match="pulse_area"):
            moments.validate_adiabatic(KAPPA, 0.0, (0.02,))
        with pytest.raises(ValueError, match="coupling ratios"):
            moments.validate_adiabatic(KAPPA, 0.1, (-0.02,))


class TestRwaComparison:
    def test_mechanical_pulse(self):
        cmp = moments.compare_optomech_rwa(
            cavity_linewidth=TWO_PI * 1.3e9, mech_damping=TWO_PI * 4.8e3,
            coupling=TWO_PI * 50e6, mech_freq=TWO_PI * 5.3e9, duration=55e-9)
        assert cmp.occupation_rwa == pytest.approx(0.0696797698085, rel=1e-9)
        assert cmp.occupation_full == pytest.approx(0.0739131349034, rel=1e-9)
        assert cmp.rel_difference == pytest.approx(0.0607545792202, rel=1e-6)
        # RWA result also tracks the closed-form residual exp(-2 area)
        area = 2.0 * (TWO_PI * 50e6) ** 2 * 55e-9 / (TWO_PI * 1.3e9)
        assert cmp.occupation_rwa == pytest.approx(math.exp(-2.0 * area),
                                                   rel=0.01)


class TestTemporalModeCapture:
    def test_stokes_output_mode_entanglement(self):
        cs = moments.stokes_temporal_mode_covariance(KAPPA, TWO_PI * 10e6,
                                                     30e-9)
        en = metrics.log_negativity_gaussian(cs.cm, (0,)).value
        assert en == pytest.approx(0.764738430541, abs=1e-9)
        # adiabatic limit: E_N -> 2r with cosh r = exp(area); finite
        # G/kappa costs a few percent
        r = math.acosh(math.exp(AREA_ENTANGLE))
        assert en == pytest.approx(2.0 * r, rel=0.05)

    def test_occupations_near_sinh_squared(self):
        cs = moments.stokes_temporal_mode_covariance(KAPPA, TWO_PI * 10e6,
                                                     30e-9)
        r = math.acosh(math.exp(AREA_ENTANGLE))
        assert cs.occupation(0) == pytest.approx(math.sinh(r) ** 2, rel=0.05)
        assert cs.occupation(1) == pytest.approx(math.sinh(r) ** 2, rel=0.05)

    def test_correlations_sit_in_cross_quadratures(self):
        cs = moments.stokes_temporal_mode_covariance(KAPPA, TWO_PI * 10e6,
                                                     30e-9)
        # two-mode squeezing along x p' + p x': the x x' entry vanishes
        assert cs.cm[0, 2] == pytest.approx(0.0, abs=1e-10)
        assert cs.cm[0, 3] == pytest.approx(cs.cm[1, 2], rel=1e-9)
        assert cs.cm[0, 3] < -0.5
