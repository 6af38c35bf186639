from .ga_core import (Multivector, PauliView, geometric_product,
                      inner_product, outer_product, grade_projection,
                      scalar_part, reversion, hermitian_adjoint, pauli_view,
                      cayley_table, format_cayley_table, random_multivector,
                      relative_vector, ONE, GAMMA0, GAMMA1, GAMMA2, GAMMA3, I,
                      SIGMA1, SIGMA2, SIGMA3, ISIGMA1, ISIGMA2, ISIGMA3)
from .helpers import (Curve, central_difference, wrap_angle,
                      unwrap_half_angle, rk4_cumulative, trapezoid_cumulative)
from .rotor import (Rotor, EulerAngles, BoostParams, check_rotor,
                    normalize_rotor, compose_rotors, exp_bivector,
                    euler_rotor, boost_rotor, rotate, split_boost_rotation,
                    euler_from_spatial, random_rotor)
from .spinor import (Spinor, SpinorPolar, Kinematics, polar_decompose,
                     compose, polar_rates, velocity, spin_vector,
                     spin_bivector, frame_split, angular_velocity, spin_rate,
                     kinematics_at, numeric_path_rotor)
from .phase import (PhaseReport, PhaseState, RateBreakdown, AdiabaticRates,
                    dynamic_rate_full, geometric_rate_full,
                    dynamic_rate_simple, geometric_rate_simple,
                    rotor_dynamic_rate, rotor_geometric_rate,
                    hermitian_dynamic_density,
                    adiabatic_standard_geometric_rate, remove_dynamic_phase,
                    ray_phase_difference, integrate_phases)
