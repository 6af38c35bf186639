#%% User-defined parameters

import numpy as np

# Precession loop
THETA0 = np.pi / 3  # Cone angle [rad]
OMEGA_PHI = 1.0     # Azimuthal angular speed

# Boosted precession
RAPIDITY = 1.0

# Integration
STEPS = 2000
FORMULA = 'both'

#%% Algebra basics

from sta_phase.algorithms.ga_core import (ISIGMA3, SIGMA1, SIGMA2,
                                          format_cayley_table)
from sta_phase.algorithms.rotor import exp_bivector, rotate

print(format_cayley_table())

# A quarter turn about sigma_3 takes sigma_2 to -sigma_1
R = exp_bivector(-np.pi / 4 * ISIGMA3)
print(rotate(SIGMA2, R) + SIGMA1)

#%% Polar form and observables of a spinor

from sta_phase.algorithms.rotor import random_rotor
from sta_phase.algorithms.spinor import (SpinorPolar, compose, polar_decompose,
                                         spin_vector, velocity)

rng = np.random.default_rng(0)
psi = compose(SpinorPolar(2.0, 0.3, random_rotor(rng, max_rapidity=1.0)))
polar = polar_decompose(psi)
print('rho = %.6f, beta = %.6f' % (polar.rho, polar.beta))
print('v =', velocity(polar.R))
print('s =', spin_vector(polar.R))

#%% Geometric phase of a precession loop

from sta_phase.algorithms.phase import integrate_phases
from sta_phase.tools import scenarios

loop = scenarios.precession_loop(THETA0, OMEGA_PHI)
report = integrate_phases(loop, steps=STEPS, formula=FORMULA)
print(report.finals)
print('expected gamma_hat_G = pi cos(theta0) = %.12f'
      % (np.pi * np.cos(THETA0)))

#%% Boosted precession: full and simplified rates differ

boosted = scenarios.boosted_precession(RAPIDITY, THETA0, OMEGA_PHI)
report_b = integrate_phases(boosted, steps=STEPS, formula=FORMULA)
print(report_b.finals)
print('max |ledger residual| = %.3e'
      % np.max(np.abs(report_b.series['consistency_residual'])))

#%% Removing the dynamic phase

from sta_phase.algorithms.phase import (hermitian_dynamic_density,
                                        remove_dynamic_phase)

dephased = remove_dynamic_phase(boosted, report_b)
t = 0.5 * boosted.duration
print('Im(Psi^dag dPsi/dt) after removal = %.3e'
      % hermitian_dynamic_density(dephased(t), dephased.derivative(t)))

#%% Matrix-representation cross-check

from sta_phase.tools.matrix_bridge import (matrix_chiral_invariants,
                                           to_matrix_spinor)

Psi = to_matrix_spinor(psi)
print('Psi =', Psi)
print('(rho, beta) from Psi-bar Psi:', matrix_chiral_invariants(Psi))

#%% Writing a report

from sta_phase.tools.report import write_report

write_report(report_b, 'boosted_precession.csv')

#%% Self-test suite

from sta_phase.tools.verification import outcomes_to_dict, run_checks

print(outcomes_to_dict(run_checks())['passed'])

#%% Dirac residual of a plane wave

from sta_phase.tools.matrix_bridge import dirac_residual

wave = scenarios.PlaneWaveField(1.0, b=(0.0, 0.0, 0.5))
print(dirac_residual(wave, None, 1.0, 1.0, (0.3, 0.1, -0.2, 0.4)).max_abs())
