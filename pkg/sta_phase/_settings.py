r"""
Numerical tolerances and run-time configuration.

Every tolerance is a module-level value with a getter/setter function of the
same lowercase name, so that tests and the ``verify`` command can tighten or
relax them without touching call sites::

    >>> from sta_phase import _settings
    >>> _settings.rotor_tol()
    1e-08
    >>> _settings.rotor_tol(1e-6)

The only environment variable read is ``STA_PHASE_OUTPUT_DIR``, the default
directory for reports written by the command-line front end.
"""

import os

# Singularity threshold for the spinor density rho
_DEGENERATE_RHO = 1e-12
# |R rev(R) - 1| allowed for a rotor
_ROTOR_TOL = 1e-8
# Largest coefficient tolerated in a grade that should be empty
_GRADE_TOL = 1e-10
# |sin(theta)| below which Euler extraction is treated as gimbal locked
_GIMBAL_TOL = 1e-9
# Scalar parts this close to zero fall back to the secondary sign rule
_SIGN_TOL = 1e-12
# Central finite-difference step
_FD_STEP = 1e-5
# Relative residual allowed when matching two spinors on one ray
_CORAY_TOL = 1e-8

DEFAULT_STEPS = 10000
DEFAULT_INTEGRATOR = 'rk4'
INTEGRATORS = ('rk4', 'trapezoid')
FORMULAS = ('full', 'simple', 'both')

OUTPUT_DIR_VARIABLE = 'STA_PHASE_OUTPUT_DIR'


def degenerate_rho(new=None):
    global _DEGENERATE_RHO
    if new is not None:
        _DEGENERATE_RHO = float(new)
    return _DEGENERATE_RHO


def rotor_tol(new=None):
    global _ROTOR_TOL
    if new is not None:
        _ROTOR_TOL = float(new)
    return _ROTOR_TOL


def grade_tol(new=None):
    global _GRADE_TOL
    if new is not None:
        _GRADE_TOL = float(new)
    return _GRADE_TOL


def gimbal_tol(new=None):
    global _GIMBAL_TOL
    if new is not None:
        _GIMBAL_TOL = float(new)
    return _GIMBAL_TOL


def sign_tol(new=None):
    global _SIGN_TOL
    if new is not None:
        _SIGN_TOL = float(new)
    return _SIGN_TOL


def fd_step(new=None):
    global _FD_STEP
    if new is not None:
        if new <= 0:
            raise ValueError('finite-difference step must be positive')
        _FD_STEP = float(new)
    return _FD_STEP


def coray_tol(new=None):
    global _CORAY_TOL
    if new is not None:
        _CORAY_TOL = float(new)
    return _CORAY_TOL


def output_dir():
    """
    Default output directory for reports.

    Returns:
        The value of ``STA_PHASE_OUTPUT_DIR`` when set and non-empty, else the
        current working directory
    """
    return os.environ.get(OUTPUT_DIR_VARIABLE) or os.getcwd()


def snapshot():
    """Current tolerances as a plain dict, used in report metadata."""
    return {'degenerate_rho': _DEGENERATE_RHO,
            'rotor_tol': _ROTOR_TOL,
            'grade_tol': _GRADE_TOL,
            'gimbal_tol': _GIMBAL_TOL,
            'sign_tol': _SIGN_TOL,
            'fd_step': _FD_STEP,
            'coray_tol': _CORAY_TOL}
