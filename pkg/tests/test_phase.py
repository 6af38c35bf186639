import numpy as np
import pytest

from sta_phase.algorithms.ga_core import (I, ISIGMA3, ONE, Multivector,
                                          allclose, random_multivector)
from sta_phase.algorithms.phase import (FINALS_KEYS, PHASE_COLUMNS,
                                        SERIES_COLUMNS, PhaseState,
                                        adiabatic_standard_geometric_rate,
                                        dynamic_rate_full, dynamic_rate_simple,
                                        geometric_rate_full,
                                        geometric_rate_simple,
                                        hermitian_dynamic_density,
                                        integrate_phases, ray_phase_difference,
                                        remove_dynamic_phase,
                                        rotor_dynamic_rate,
                                        rotor_geometric_rate, sample_rates)
from sta_phase.algorithms.helpers import Curve
from sta_phase.algorithms.rotor import exp_bivector, random_rotor
from sta_phase.algorithms.spinor import kinematics_at
from sta_phase.errors import (DegenerateSpinorError, IntegrationError,
                              NotCorayError, NumericalDerivativeError,
                              RangeError)
from sta_phase.tools import scenarios


def test_rest_electron_phases():
    report = integrate_phases(scenarios.rest_plane_wave(1.0), steps=100)
    assert report.finals['delta_G'] == pytest.approx(-1.0, abs=1e-10)
    assert report.finals['gamma_G'] == pytest.approx(0.0, abs=1e-10)
    assert report.finals['delta_hat_G'] == pytest.approx(-1.0, abs=1e-10)
    assert report.finals['gamma_hat_G'] == pytest.approx(0.0, abs=1e-10)
    assert report.finals['total_phase_change'] == pytest.approx(-1.0)
    assert list(report.finals) == FINALS_KEYS
    assert list(report.series.columns) == SERIES_COLUMNS
    assert list(report.phases.columns) == PHASE_COLUMNS
    assert len(report.series) == 101
    assert report.scenario['kind'] == 'rest_plane_wave'


def test_rest_positron_phases():
    report = integrate_phases(scenarios.rest_plane_wave(1.0, 'positron'),
                              steps=100)
    assert report.finals['delta_G'] == pytest.approx(1.0, abs=1e-10)
    assert report.finals['total_phase_change'] == pytest.approx(1.0)
    assert np.allclose(np.abs(report.series['beta']), np.pi)


@pytest.mark.parametrize('theta0, expected', [(np.pi / 3, np.pi / 2),
                                              (np.pi / 2, 0.0),
                                              (0.0, np.pi)])
def test_precession_loop_geometric_phase(theta0, expected):
    report = integrate_phases(scenarios.precession_loop(theta0, 1.0),
                              steps=200)
    assert report.finals['gamma_hat_G'] == pytest.approx(expected, abs=1e-8)
    # no boost, so the frame correction vanishes
    assert report.finals['gamma_G'] == pytest.approx(expected, abs=1e-8)
    assert report.finals['delta_hat_G'] == pytest.approx(-expected, abs=1e-8)
    assert report.finals['total_phase_change'] == pytest.approx(0.0)


def test_boosted_precession_ledger():
    report = integrate_phases(scenarios.boosted_precession(1.0, np.pi / 3,
                                                           1.0), steps=400)
    assert np.max(np.abs(report.series['consistency_residual'])) < 1e-8
    f = report.finals
    assert f['delta_G'] + f['gamma_G'] == pytest.approx(
        f['total_phase_change'], abs=1e-8)
    assert f['delta_hat_G'] + f['gamma_hat_G'] == pytest.approx(
        f['total_phase_change'], abs=1e-8)
    assert abs(f['gamma_G'] - f['gamma_hat_G']) > 1e-3


def test_frame_correction_is_shared():
    traj = scenarios.boosted_precession(0.8, np.pi / 4, 1.3)
    k = kinematics_at(traj, 0.7)
    dyn, geo = dynamic_rate_full(k), geometric_rate_full(k)
    assert dyn.relativistic_correction == pytest.approx(
        -geo.relativistic_correction)
    assert abs(dyn.relativistic_correction) > 1e-3
    assert dyn.omega_term == pytest.approx(dynamic_rate_simple(k))
    assert geo.omega_term == pytest.approx(geometric_rate_simple(k))
    rest = kinematics_at(scenarios.precession_loop(np.pi / 4, 1.3), 0.7)
    assert dynamic_rate_full(rest).relativistic_correction == \
        pytest.approx(0.0, abs=1e-12)


def test_rotor_forms_of_simple_rates():
    rng = np.random.default_rng(40)
    traj = scenarios.random_custom_euler(rng)
    for t in (0.2, 0.6):
        k = kinematics_at(traj, t)
        assert rotor_dynamic_rate(k.R, k.R_dot) == pytest.approx(
            dynamic_rate_simple(k), abs=1e-10)
        assert rotor_geometric_rate(k.R0, k.R0_dot) == pytest.approx(
            geometric_rate_simple(k), abs=1e-10)


@pytest.mark.parametrize('traj', [
    scenarios.boosted_precession(1.0, np.pi / 3, 1.0),
    scenarios.beta_ramp(0.4),
    scenarios.random_custom_euler(np.random.default_rng(41)),
])
def test_hermitian_density_matches_full_dynamic_rate(traj):
    for t in (0.1, 0.5, 0.9):
        k = kinematics_at(traj, t)
        density = hermitian_dynamic_density(k.psi, k.psi_dot)
        assert density == pytest.approx(k.varrho * dynamic_rate_full(k).total,
                                        abs=1e-8)


def test_formula_selection():
    traj = scenarios.precession_loop(np.pi / 3, 1.0)
    full = integrate_phases(traj, steps=50, formula='full')
    assert full.series['delta_hat_rate'].isna().all()
    assert np.isnan(full.finals['gamma_hat_G'])
    assert not np.isnan(full.finals['gamma_G'])
    simple = integrate_phases(traj, steps=50, formula='simple')
    assert simple.series['gamma_L_rate'].isna().all()
    assert simple.finals['gamma_hat_G'] == pytest.approx(np.pi / 2)
    assert simple.meta['formula'] == 'simple'


def test_trapezoid_matches_rk4_for_constant_rates():
    traj = scenarios.precession_loop(np.pi / 3, 1.0)
    rk4 = integrate_phases(traj, steps=100)
    trap = integrate_phases(traj, steps=100, integrator='trapezoid')
    for key in FINALS_KEYS:
        assert trap.finals[key] == pytest.approx(rk4.finals[key], abs=1e-10)
    assert trap.meta['integrator'] == 'trapezoid'


def test_proper_time_mode():
    b = 0.5
    traj = scenarios.boosted_plane_wave(1.0, (0.0, 0.0, b), duration=2.0)
    plain = integrate_phases(traj, steps=100)
    proper = integrate_phases(traj, steps=100, proper_time=True)
    assert 'tau' in proper.series and 'tau' not in plain.series
    assert proper.series['tau'].iloc[-1] == pytest.approx(2.0 / np.cosh(b))
    assert np.allclose(proper.series['delta_L_rate'],
                       plain.series['delta_L_rate'] * np.cosh(b))
    for key in FINALS_KEYS:
        assert proper.finals[key] == pytest.approx(plain.finals[key])
    assert plain.finals['total_phase_change'] == pytest.approx(
        -2.0 / np.cosh(b))


def test_state_at():
    report = integrate_phases(scenarios.precession_loop(np.pi / 3, 1.0),
                              steps=40)
    start = report.state_at(0)
    assert isinstance(start, PhaseState)
    assert start.t == 0.0 and start.gamma_hat == 0.0
    end = report.state_at()
    assert end.t == pytest.approx(2 * np.pi)
    assert end.gamma_hat == pytest.approx(report.finals['gamma_hat_G'])


@pytest.mark.parametrize('kwargs', [{'steps': 1}, {'steps': 2.5},
                                    {'formula': 'both-ish'},
                                    {'integrator': 'euler'},
                                    {'t_span': (1.0, 1.0)}])
def test_integrate_phases_rejects_bad_arguments(kwargs):
    with pytest.raises(ValueError):
        integrate_phases(scenarios.rest_plane_wave(1.0), **kwargs)


def test_integration_error_reports_time():
    traj = scenarios.custom_euler(rho={'poly': [1.0, -1.0]}, duration=1.0)
    with pytest.raises(IntegrationError) as info:
        integrate_phases(traj, steps=10)
    assert info.value.t == pytest.approx(1.0)
    assert str(info.value).startswith('t = 1:')


def test_remove_dynamic_phase_exact():
    traj = scenarios.rest_plane_wave(1.0)
    dephased = remove_dynamic_phase(traj, scenarios.Series.linear(-1.0))
    for t in (0.0, 0.3, 0.8):
        assert allclose(dephased(t), ONE, atol=1e-12)
        assert hermitian_dynamic_density(dephased(t), dephased.derivative(t)) \
            == pytest.approx(0.0, abs=1e-12)


def test_remove_dynamic_phase_from_report():
    traj = scenarios.boosted_precession(0.5, np.pi / 3, 1.0)
    report = integrate_phases(traj, steps=500, formula='full')
    dephased = remove_dynamic_phase(traj, report)
    for t in (0.5, 3.0, 6.0):
        assert hermitian_dynamic_density(dephased(t), dephased.derivative(t)) \
            == pytest.approx(0.0, abs=1e-6)
    again = integrate_phases(dephased, steps=100, formula='full')
    assert again.finals['delta_G'] == pytest.approx(0.0, abs=1e-6)
    assert again.finals['gamma_G'] == pytest.approx(report.finals['gamma_G'],
                                                    abs=1e-6)
    t = report.phases['t'].to_numpy()
    delta = report.phases['delta_L'].to_numpy()
    tuple_form = remove_dynamic_phase(traj, (t, delta))
    assert allclose(tuple_form(2.0), dephased(2.0))


def test_ray_phase_difference():
    rng = np.random.default_rng(42)
    psi = random_multivector(rng, grades=(0, 2, 4))
    assert ray_phase_difference(psi, psi) == pytest.approx(0.0, abs=1e-12)
    shifted = psi * exp_bivector(0.7 * ISIGMA3)
    assert ray_phase_difference(psi, shifted) == pytest.approx(0.7)
    assert ray_phase_difference(psi, -psi) == pytest.approx(np.pi)


def test_ray_phase_difference_errors():
    rng = np.random.default_rng(43)
    psi = random_multivector(rng, grades=(0, 2, 4))
    with pytest.raises(NotCorayError) as info:
        ray_phase_difference(psi, I * psi)
    assert info.value.residual > 0.1
    with pytest.raises(DegenerateSpinorError):
        ray_phase_difference(Multivector(), psi)


def test_adiabatic_offset_on_eigencurve():
    theta0 = np.pi / 3
    traj = scenarios.precession_eigencurve(theta0, 1.0)
    for t in (0.5, 2.0, 5.0):
        rates = adiabatic_standard_geometric_rate(traj, t)
        assert rates.half_chi_rate == pytest.approx(-0.5)
        assert rates.geometric == pytest.approx(0.5 * np.cos(theta0))
        assert rates.standard == pytest.approx(rates.geometric
                                               + rates.half_chi_rate)


def test_rotor_rates_ignore_a_constant_lorentz_frame():
    rng = np.random.default_rng(51)
    traj = scenarios.random_custom_euler(rng)
    for t in (0.2, 0.7):
        R, R_dot = traj.rotor(t), traj.rotor_derivative(t)
        R0, R0_dot = traj.path_rotor(t)
        L = random_rotor(rng, max_rapidity=1.5)
        assert rotor_dynamic_rate(L * R, L * R_dot) == \
            pytest.approx(rotor_dynamic_rate(R, R_dot), abs=1e-9)
        assert rotor_geometric_rate(L * R0, L * R0_dot) == \
            pytest.approx(rotor_geometric_rate(R0, R0_dot), abs=1e-9)


def test_batched_rates_match_pointwise():
    rng = np.random.default_rng(52)
    nodes = np.linspace(0.0, 1.0, 41)
    trajectories = [scenarios.random_custom_euler(rng) for _ in range(3)]
    trajectories.append(scenarios.reparameterize(
        scenarios.boosted_precession(0.8, np.pi / 3, 1.0),
        scenarios.Series(poly=[0.0, 1.0, 0.5]), 1.0))
    for traj in trajectories:
        fast = sample_rates(traj, nodes, batched=True)
        slow = sample_rates(traj, nodes, batched=False)
        assert np.allclose(fast.rates, slow.rates, atol=1e-9)
        assert np.allclose(fast.chi, slow.chi, atol=1e-12)
        assert np.allclose(fast.beta, slow.beta, atol=1e-12)
        assert np.allclose(fast.v0, slow.v0, atol=1e-12)


@pytest.mark.parametrize('name', [e[0] for e in scenarios.BUILTIN_EXAMPLES])
def test_builtin_ledger_at_full_resolution(name):
    traj = dict(scenarios.builtin_trajectories())[name]
    report = integrate_phases(traj, steps=10000, formula='both')
    f = report.finals
    total = f['total_phase_change']
    assert abs(f['delta_G'] + f['gamma_G'] - total) <= 1e-6
    assert abs(f['delta_hat_G'] + f['gamma_hat_G'] - total) <= 1e-6
    assert np.abs(report.series['consistency_residual']).max() <= 1e-6


def test_path_rotor_is_reused_for_repeated_times():
    traj = scenarios.boosted_precession(1.0, np.pi / 3, 1.0)
    first = traj.path_rotor(0.4)
    assert traj.path_rotor(0.4) is first
    other = traj.path_rotor(0.5)
    assert other is not first
    assert allclose(traj.path_rotor(0.4)[0], first[0])


def test_batched_and_pointwise_failures_agree():
    traj = scenarios.custom_euler(rho={'poly': [1.0, -1.0]}, duration=1.0)
    nodes = np.linspace(0.0, 1.0, 11)
    for batched in (True, False):
        with pytest.raises(IntegrationError) as info:
            sample_rates(traj, nodes, batched=batched)
        assert info.value.t == pytest.approx(1.0)
        assert isinstance(info.value.__cause__, DegenerateSpinorError)


def test_integration_error_wraps_domain_failures():
    rotor = Curve(lambda t: exp_bivector(-0.5 * t * ISIGMA3),
                  domain=(0.0, 1.0))
    with pytest.raises(IntegrationError) as info:
        integrate_phases(rotor, steps=10, t_span=(0.0, 1.0))
    assert info.value.t == 0.0
    assert isinstance(info.value.__cause__, RangeError)


def test_integration_error_wraps_non_finite_differences():
    def spinor(t):
        if t > 0.52:
            return Multivector(np.full(16, np.nan))
        return exp_bivector(-0.5 * t * ISIGMA3)

    with pytest.raises(IntegrationError) as info:
        integrate_phases(Curve(spinor), steps=10, t_span=(0.0, 1.0))
    assert info.value.t == pytest.approx(0.55)
    assert isinstance(info.value.__cause__, NumericalDerivativeError)
