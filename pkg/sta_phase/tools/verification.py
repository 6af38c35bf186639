r"""
Self-test suite run by ``sta-phase verify``.

Each check computes the largest residual of an identity that must hold to
floating-point accuracy and compares it with a tolerance. Checks draw random
inputs from generators with fixed seeds, so repeated runs report identical
residuals.
"""

import logging
from collections import namedtuple

import numpy as np

from ..algorithms.ga_core import (GAMMA, GAMMA0, I, ISIGMA3, ONE, SIGMA1,
                                  SIGMA2, SIGMA3, hermitian_adjoint,
                                  random_multivector)
from ..algorithms.helpers import wrap_angle
from ..algorithms.phase import (adiabatic_standard_geometric_rate,
                                dynamic_rate_full, dynamic_rate_simple,
                                geometric_rate_full, geometric_rate_simple,
                                hermitian_dynamic_density, integrate_phases,
                                remove_dynamic_phase, rotor_dynamic_rate)
from ..algorithms.rotor import (euler_from_spatial, euler_rotor, exp_bivector,
                                random_rotor, rotate, split_boost_rotation)
from ..algorithms.spinor import (SpinorPolar, compose, kinematics_at,
                                 polar_decompose, spin_bivector, spin_vector,
                                 velocity)
from . import matrix_bridge as mb
from . import scenarios

logger = logging.getLogger(__name__)

VerifyOutcome = namedtuple('VerifyOutcome',
                           ['name', 'passed', 'max_residual', 'tolerance'])
VerifyOutcome.__doc__ = 'Result of one verification check.'

SEED = 20240101
N_RANDOM = 1000
N_TRAJECTORY_SAMPLES = 200
LEDGER_STEPS = 10000


def _random_spinor(rng):
    return random_multivector(rng, grades=(0, 2, 4))


def _max(values):
    values = list(values)
    return float(max(values)) if values else 0.0


def check_algebra_oracle(rng, sign_table=None):
    return mb.structure_constant_mismatch(sign_table)


def check_worked_rotation(rng, sign_table=None):
    # sigma_2 turned a quarter turn about sigma_3 gives -sigma_1
    R = exp_bivector(-np.pi / 4 * ISIGMA3)
    return (rotate(SIGMA2, R) + SIGMA1).max_abs()


def check_associativity(rng, sign_table=None):
    worst = 0.0
    for _ in range(200):
        a, b, c = (random_multivector(rng) for _ in range(3))
        worst = max(worst, ((a * b) * c - a * (b * c)).max_abs())
    return worst


def check_reversion_antihomomorphism(rng, sign_table=None):
    worst = 0.0
    for _ in range(200):
        a, b = random_multivector(rng), random_multivector(rng)
        worst = max(worst, (~(a * b) - ~b * ~a).max_abs())
    return worst


def check_rotor_round_trips(rng, sign_table=None):
    worst = 0.0
    for _ in range(N_RANDOM):
        R = random_rotor(rng, max_rapidity=2.0)
        L, U = split_boost_rotation(R)
        angles, sign = euler_from_spatial(U, return_sign=True)
        worst = max(worst, (L * U - R).max_abs(),
                    (euler_rotor(angles) - sign * U).max_abs())
    return worst


def check_polar_round_trip(rng, sign_table=None):
    worst = 0.0
    for _ in range(N_RANDOM):
        rho = rng.uniform(0.1, 10.0)
        beta = rng.uniform(-np.pi, np.pi)
        R = random_rotor(rng, max_rapidity=2.0)
        p = polar_decompose(compose(SpinorPolar(rho, beta, R)))
        worst = max(worst, abs(p.rho - rho) / rho,
                    abs(wrap_angle(p.beta - beta)), (p.R - R).max_abs())
    p = polar_decompose(I)
    return max(worst, abs(p.rho - 1.0), abs(p.beta - np.pi),
               (p.R - ONE).max_abs())


def check_observable_invariants(rng, sign_table=None):
    worst = 0.0
    for _ in range(N_RANDOM):
        R = random_rotor(rng, max_rapidity=2.0)
        v, s, S = velocity(R), spin_vector(R), spin_bivector(R)
        worst = max(worst, abs((v * v).scalar_part - 1.0),
                    abs((s * v).scalar_part),
                    (S - I * s * v).max_abs(),
                    abs((S * S).scalar_part + 0.25))
    return worst


def check_derivation_chain(rng, sign_table=None):
    r"""
    Hermitian dynamic density against :math:`\varrho` times the full rate,
    the matrix standard rate against the same, and the matrix rotor rate
    against the simplified STA rate.
    """

    worst = 0.0
    per_curve = 10
    for _ in range(N_TRAJECTORY_SAMPLES // per_curve):
        traj = scenarios.random_custom_euler(rng)
        for t in rng.uniform(0.0, traj.duration, per_curve):
            k = kinematics_at(traj, t)
            full = dynamic_rate_full(k).total
            density = hermitian_dynamic_density(k.psi, k.psi_dot)
            standard = mb.standard_dynamic_rate(k.psi, k.psi_dot)
            Rm = mb.to_matrix_spinor(k.R)
            Rm_dot = mb.to_matrix_spinor(k.R_dot)
            worst = max(worst, abs(density - k.varrho * full),
                        abs(standard - full),
                        abs(mb.matrix_phase_rate(Rm, Rm_dot)
                            - dynamic_rate_simple(k)),
                        abs(rotor_dynamic_rate(k.R, k.R_dot)
                            - dynamic_rate_simple(k)))
    return worst


def check_phase_removal(rng, sign_table=None):
    r"""Hermitian dynamic density left after removing the integrated :math:`\delta_L`."""
    traj = scenarios.boosted_precession(0.5, np.pi / 3, 1.0)
    report = integrate_phases(traj, steps=1000, formula='full')
    dephased = remove_dynamic_phase(traj, report)
    worst = 0.0
    for t in np.linspace(0.1, traj.duration - 0.1, 25):
        k = kinematics_at(dephased, t)
        worst = max(worst, abs(hermitian_dynamic_density(k.psi, k.psi_dot)
                               / k.varrho))
    return worst


def check_matrix_correspondences(rng, sign_table=None):
    worst = 0.0
    for _ in range(N_RANDOM):
        psi, phi = _random_spinor(rng), _random_spinor(rng)
        Psi, Phi = mb.to_matrix_spinor(psi), mb.to_matrix_spinor(phi)
        p = polar_decompose(psi)
        bar = mb.dirac_adjoint(Psi)
        errs = [np.abs(mb.GAMMA5_HAT @ Psi
                       - mb.to_matrix_spinor(psi * SIGMA3)).max(),
                np.abs(1j * Psi - mb.to_matrix_spinor(psi * ISIGMA3)).max(),
                np.abs(1j * mb.GAMMA5_HAT @ Psi
                       - mb.to_matrix_spinor(I * psi)).max(),
                abs((bar @ Psi).real - p.rho * np.cos(p.beta)),
                abs((bar @ (1j * mb.GAMMA5_HAT @ Psi)).real
                    + p.rho * np.sin(p.beta)),
                np.abs(np.subtract(mb.amplitude_hermitian(psi, phi),
                                   mb.matrix_amplitude_hermitian(Psi, Phi))
                       ).max(),
                np.abs(np.subtract(mb.amplitude_dirac(psi, phi),
                                   mb.matrix_amplitude_dirac(Psi, Phi))
                       ).max(),
                np.abs(mb.to_matrix_spinor(mb.from_matrix_spinor(Psi))
                       - Psi).max()]
        for mu, g in enumerate(GAMMA):
            errs.append(np.abs(mb.GAMMA_HAT[mu] @ Psi
                               - mb.to_matrix_spinor(g * psi * GAMMA0)).max())
        c = random_multivector(rng)
        errs.append(np.abs(mb.matrix_image(hermitian_adjoint(c))
                           - mb.matrix_image(c).conj().T).max())
        worst = max(worst, *errs)
    return worst


def check_chiral_invariance(rng, sign_table=None):
    worst = 0.0
    for _ in range(N_RANDOM):
        psi = _random_spinor(rng)
        Psi = mb.to_matrix_spinor(psi)
        Rm = mb.extract_matrix_rotor(Psi)
        shifted = mb.extract_matrix_rotor(
            mb.chiral_transform(Psi, rng.uniform(-np.pi, np.pi)))
        # a chiral angle pushed across pi flips the rotor sign
        drift = min(np.abs(shifted - Rm).max(), np.abs(shifted + Rm).max())
        bar = mb.dirac_adjoint(Rm)
        worst = max(worst, drift, abs(bar @ Rm - 1.0),
                    np.abs(Rm - mb.to_matrix_spinor(polar_decompose(psi).R))
                    .max(),
                    np.abs(mb.chiral_transform(Psi, 2 * np.pi) + Psi).max())
    return worst


def _spacetime_grid():
    axis = np.linspace(-1.0, 1.0, 5)
    return np.stack(np.meshgrid(axis, axis, axis, axis, indexing='ij'),
                    axis=-1).reshape(-1, 4)


def check_dirac_residuals(rng, sign_table=None):
    fields = [scenarios.PlaneWaveField(1.0, sign='electron'),
              scenarios.PlaneWaveField(1.0, sign='positron'),
              scenarios.PlaneWaveField(0.7, b=(0.3, -0.2, 0.5)),
              scenarios.PlaneWaveField(0.7, b=(-0.4, 0.1, 0.2),
                                       sign='positron')]
    grid = _spacetime_grid()
    worst = _max(mb.dirac_residual(f, None, f.charge, f.m, x).max_abs()
                 for f in fields for x in grid)
    # an off-shell rest wave leaves exactly |detuning| psi gamma0
    detuning = 0.1
    off = scenarios.PlaneWaveField(1.0, detuning=detuning)
    offset = _max(abs(mb.dirac_residual(off, None, off.charge, off.m, x).norm()
                      - detuning) for x in grid)
    return max(worst, offset)


def check_gauge_shift(rng, sign_table=None):
    alpha = scenarios.Series(trig=[[0.3, 1.0, 0.0]])
    traj = scenarios.precession_loop(np.pi / 3, 1.0)
    shifted = scenarios.gauge_shift(traj, alpha)
    base = integrate_phases(traj, steps=500, formula='simple').phases
    moved = integrate_phases(shifted, steps=500, formula='simple').phases
    expected = np.array([alpha(t) - alpha(0.0) for t in base['t']])
    return max(np.abs(moved['gamma_hat'] - base['gamma_hat']).max(),
               np.abs(moved['delta_hat'] - base['delta_hat']
                      - expected).max())


def check_nonrelativistic_collapse(rng, sign_table=None):
    flat = scenarios.precession_loop(np.pi / 3, 1.0)
    boosted = scenarios.boosted_precession(1.0, np.pi / 3, 1.0)
    worst = 0.0
    split = 0.0
    for t in np.linspace(0.0, flat.duration, 50):
        k = kinematics_at(flat, t)
        worst = max(worst,
                    abs(dynamic_rate_full(k).total - dynamic_rate_simple(k)),
                    abs(geometric_rate_full(k).total
                        - geometric_rate_simple(k)))
        kb = kinematics_at(boosted, t)
        delta, gamma = dynamic_rate_full(kb), geometric_rate_full(kb)
        split = max(split, abs(delta.total - dynamic_rate_simple(kb)))
        worst = max(worst, abs(delta.total + gamma.total
                               + 0.5 * boosted.chi_angle(t)[1]))
    if split < 1e-3:
        return np.inf
    return worst


def check_closed_loop_phase(rng, sign_table=None):
    steps = 200
    loop = scenarios.precession_loop(np.pi / 3, 1.0)
    gamma = integrate_phases(loop, steps=steps,
                             formula='simple').finals['gamma_hat_G']
    flat = integrate_phases(scenarios.precession_loop(np.pi / 2, 1.0),
                            steps=steps,
                            formula='simple').finals['gamma_hat_G']
    T = loop.duration
    warped = scenarios.reparameterize(loop, scenarios.Series(poly=[0, 0, 1 / T]),
                                      T)
    gamma_warped = integrate_phases(warped, steps=steps,
                                    formula='simple').finals['gamma_hat_G']
    return max(abs(gamma - np.pi / 2), abs(flat), abs(gamma_warped - gamma))


def check_adiabatic_offset(rng, sign_table=None):
    curve = scenarios.precession_eigencurve(np.pi / 3, 1.0)
    worst = 0.0
    for t in np.linspace(0.0, curve.duration, 50):
        rates = adiabatic_standard_geometric_rate(curve, t)
        worst = max(worst, abs(rates.standard - rates.geometric
                               - 0.5 * curve.chi_angle(t)[1]))
    return worst


def check_scenario_ledger(rng, sign_table=None):
    # delta + gamma = total phase change for both rate families
    worst = 0.0
    for name, traj in scenarios.builtin_trajectories(LEDGER_STEPS):
        report = integrate_phases(traj, steps=LEDGER_STEPS, formula='both')
        f = report.finals
        total = f['total_phase_change']
        residual = max(abs(f['delta_G'] + f['gamma_G'] - total),
                       abs(f['delta_hat_G'] + f['gamma_hat_G'] - total),
                       float(np.abs(report.series['consistency_residual'])
                             .max()))
        logger.debug('%s: ledger residual %.3e', name, residual)
        worst = max(worst, residual)
    return worst


# name -> (check, default tolerance)
CHECKS = {
    'algebra_oracle': (check_algebra_oracle, 1e-12),
    'worked_rotation': (check_worked_rotation, 1e-12),
    'associativity': (check_associativity, 1e-10),
    'reversion_antihomomorphism': (check_reversion_antihomomorphism, 1e-12),
    'rotor_round_trips': (check_rotor_round_trips, 1e-10),
    'polar_round_trip': (check_polar_round_trip, 1e-10),
    'observable_invariants': (check_observable_invariants, 1e-10),
    'derivation_chain': (check_derivation_chain, 1e-8),
    'phase_removal': (check_phase_removal, 1e-6),
    'matrix_correspondences': (check_matrix_correspondences, 1e-10),
    'chiral_invariance': (check_chiral_invariance, 1e-10),
    'dirac_residuals': (check_dirac_residuals, 1e-10),
    'gauge_shift': (check_gauge_shift, 1e-8),
    'nonrelativistic_collapse': (check_nonrelativistic_collapse, 1e-8),
    'closed_loop_phase': (check_closed_loop_phase, 1e-6),
    'adiabatic_offset': (check_adiabatic_offset, 1e-8),
    'scenario_ledger': (check_scenario_ledger, 1e-6),
}


def run_checks(tolerance=None, sign_table=None, names=None):
    """
    Run the verification suite.

    Args:
        tolerance (float): Override for every check's tolerance. Default is
            `None` (use each check's own)
        sign_table: Replacement ``(16, 16)`` structure-constant sign table for
            the algebra oracle, used to confirm that a corrupted table is
            caught
        names: Subset of :data:`CHECKS` to run. Default is `None` (all)

    Returns:
        list of :data:`VerifyOutcome`, in :data:`CHECKS` order
    """

    if tolerance is not None and not tolerance >= 0:
        raise ValueError('tolerance must be non-negative, got %r'
                         % (tolerance,))
    if names is None:
        names = list(CHECKS)
    unknown = set(names) - set(CHECKS)
    if unknown:
        raise KeyError('unknown checks: %s' % ', '.join(sorted(unknown)))

    outcomes = []
    for name in (n for n in CHECKS if n in names):
        check, default_tol = CHECKS[name]
        tol = default_tol if tolerance is None else float(tolerance)
        try:
            residual = float(check(np.random.default_rng(SEED), sign_table))
        except Exception:
            logger.exception('check %s raised', name)
            residual = np.inf
        passed = bool(residual <= tol)
        outcomes.append(VerifyOutcome(name, passed, residual, tol))
        if passed:
            logger.info('%-28s pass  %.3e <= %.1e', name, residual, tol)
        else:
            logger.error('%-28s FAIL  %.3e > %.1e', name, residual, tol)
    return outcomes


def outcomes_to_dict(outcomes):
    """Machine-readable summary with the list of failed checks."""
    return {'passed': all(o.passed for o in outcomes),
            'failures': [o.name for o in outcomes if not o.passed],
            'checks': [{'name': o.name, 'passed': o.passed,
                        'max_residual': (o.max_residual
                                         if np.isfinite(o.max_residual)
                                         else None),
                        'tolerance': o.tolerance} for o in outcomes]}
