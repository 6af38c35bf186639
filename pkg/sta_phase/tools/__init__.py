from .matrix_bridge import (GAMMA_HAT, GAMMA5_HAT, to_matrix_spinor,
                            from_matrix_spinor, amplitude_hermitian,
                            amplitude_dirac, chiral_transform,
                            extract_matrix_rotor, matrix_phase_rate,
                            standard_dynamic_rate, dirac_residual)
from .scenarios import (Series, SpinorTrajectory, PlaneWaveField,
                        ScenarioSpec, SCENARIO_SCHEMA, rest_plane_wave,
                        boosted_plane_wave, precession_loop,
                        precession_eigencurve, boosted_precession, beta_ramp,
                        custom_euler, finite_difference_rotor, gauge_shift,
                        reparameterize, load_scenario, parse_scenario,
                        build_trajectory)
from .report import write_report, report_to_csv, report_to_json
from .verification import VerifyOutcome, run_checks
