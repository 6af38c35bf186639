r"""
Dynamic and geometric phases of a spinor trajectory.

Writing :math:`\psi = (\rho e^{I\beta})^{1/2}R_0e^{-I\sigma_3\chi/2}`, the
total phase is :math:`-\chi/2`. It splits into a dynamic part with local rate

.. math::

    \dot{\delta}_L = -\Omega_0\cdot S - \frac{\mathbf{v}}{v^0}\cdot
    \left[\dot{S} - \frac{\mathbf{s}}{v^0}\dot{\beta}\right]

and a geometric part

.. math::

    \dot{\gamma}_L = \omega_0\cdot S + \frac{\mathbf{v}}{v^0}\cdot
    \left[\dot{S} - \frac{\mathbf{s}}{v^0}\dot{\beta}\right],

so that :math:`\delta_L + \gamma_L = -\chi/2 + \chi(0)/2`. Dropping the frame
correction gives the simplified rates :math:`\dot{\hat{\delta}}_L =
-\Omega_0\cdot S` and :math:`\dot{\hat{\gamma}}_L = \omega_0\cdot S`, which
no longer refer to :math:`\gamma_0`.

Global phases are time integrals of the local rates along a single,
spatially homogeneous streamline with unit density.
"""

import logging
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy.interpolate import CubicSpline

from .. import _settings
from .._version import __version__
from ..errors import (ContractViolationError, DecompositionError,
                      DegenerateSpinorError, IntegrationError,
                      NonOrthochronousError, NotCorayError,
                      NumericalDerivativeError, RangeError)
from .ga_core import (GAMMA0, ISIGMA3, ONE, batch_scalar_product,
                      require_even, scalar_part)
from .helpers import (derivative_of, first_failure, rk4_cumulative,
                      trapezoid_cumulative, unwrap_half_angle)
from .spinor import kinematics_at, kinematics_table, polar_decompose

logger = logging.getLogger(__name__)

SERIES_COLUMNS = ['t', 'delta_L_rate', 'gamma_L_rate', 'delta_hat_rate',
                  'gamma_hat_rate', 'beta', 'v0', 'consistency_residual']
PHASE_COLUMNS = ['t', 'delta_L', 'gamma_L', 'delta_hat', 'gamma_hat', 'chi']
FINALS_KEYS = ['delta_G', 'gamma_G', 'delta_hat_G', 'gamma_hat_G',
               'total_phase_change']

AdiabaticRates = namedtuple('AdiabaticRates',
                            ['standard', 'geometric', 'half_chi_rate'])
AdiabaticRates.__doc__ = r"""Standard adiabatic geometric rate
:math:`\dot{\Gamma}`, simplified STA rate :math:`\dot{\hat{\gamma}}` and
:math:`\dot{\chi}/2` at one time."""


@dataclass(frozen=True)
class RateBreakdown:
    """A local phase rate split into its Omega term and frame correction."""

    omega_term: float
    relativistic_correction: float

    @property
    def total(self):
        return self.omega_term + self.relativistic_correction


@dataclass(frozen=True)
class PhaseState:
    """Accumulated phases at time ``t``; all start at zero."""

    t: float
    delta_L: float
    gamma_L: float
    delta_hat: float
    gamma_hat: float
    chi: float


def _frame_correction(k, S_dot):
    # (v/v0) . [S_dot - (s/v0) beta_dot]
    if k.v0 <= 0:
        raise NonOrthochronousError('v0 = %g is not positive' % k.v0)
    if k.varrho <= _settings.degenerate_rho():
        raise DegenerateSpinorError('observer density %.3g is degenerate'
                                    % k.varrho)
    bracket = S_dot - k.s_spatial * (k.beta_dot / k.v0)
    return scalar_part(k.v_spatial * bracket) / k.v0


def dynamic_rate_full(k, S_dot=None):
    r"""
    Full local dynamic rate :math:`\dot{\delta}_L`.

    Args:
        k: :class:`~sta_phase.algorithms.spinor.Kinematics`
        S_dot: Spin-bivector rate. Default is `None` (use ``k.S_dot``)

    Returns:
        :class:`RateBreakdown` with ``omega_term`` :math:`-\Omega_0\cdot S`

    Raises:
        NonOrthochronousError: If :math:`v^0 \le 0`
        DegenerateSpinorError: If :math:`\varrho` is degenerate
    """

    S_dot = k.S_dot if S_dot is None else S_dot
    correction = _frame_correction(k, S_dot)
    return RateBreakdown(-scalar_part(k.omega0_full * k.S), -correction)


def geometric_rate_full(k, S_dot=None):
    r"""Full local geometric rate :math:`\dot{\gamma}_L`, see :func:`dynamic_rate_full`."""
    S_dot = k.S_dot if S_dot is None else S_dot
    correction = _frame_correction(k, S_dot)
    return RateBreakdown(scalar_part(k.omega0_path * k.S), correction)


def dynamic_rate_simple(k):
    r""":math:`\dot{\hat{\delta}}_L = -\Omega_0\cdot S`."""
    return -scalar_part(k.omega0_full * k.S)


def geometric_rate_simple(k):
    r""":math:`\dot{\hat{\gamma}}_L = \omega_0\cdot S`."""
    return scalar_part(k.omega0_path * k.S)


def rotor_dynamic_rate(R, R_dot):
    r"""Frame-free form :math:`-\langle\dot{R}I\sigma_3\tilde{R}\rangle_0`."""
    return -scalar_part(R_dot * ISIGMA3 * ~R)


def rotor_geometric_rate(R0, R0_dot):
    r"""Frame-free form :math:`\langle\dot{R}_0I\sigma_3\tilde{R}_0\rangle_0`."""
    return scalar_part(R0_dot * ISIGMA3 * ~R0)


def hermitian_dynamic_density(psi, psi_dot):
    r"""
    :math:`\varrho\dot{\delta}_L = -\langle\dot{\psi}I\sigma_3\gamma_0
    \tilde{\psi}\gamma_0\rangle_0`, the STA form of
    :math:`\mathrm{Im}(\Psi^\dagger\dot{\Psi})`.
    """

    return -scalar_part(psi_dot * ISIGMA3 * GAMMA0 * ~psi * GAMMA0)


def adiabatic_standard_geometric_rate(phi_m_curve, t):
    r"""
    Standard adiabatic geometric rate of an eigenfunction curve.

    :math:`\dot{\Gamma}_m = -\mathrm{Im}(\Phi_m^\dagger\dot{\Phi}_m)/\varrho`
    on a unit-density streamline. It exceeds the simplified STA geometric
    rate by :math:`\dot{\chi}/2`.

    Args:
        phi_m_curve: Spinor curve (see
            :func:`~sta_phase.algorithms.spinor.kinematics_at`)
        t (float): Sample time

    Returns:
        :data:`AdiabaticRates`
    """

    k = kinematics_at(phi_m_curve, t)
    standard = -hermitian_dynamic_density(k.psi, k.psi_dot) / k.varrho
    return AdiabaticRates(standard, geometric_rate_simple(k), 0.5 * k.chi_dot)


def _phase_factor(angle):
    # exp(I sigma_3 angle)
    angle = float(angle)
    return np.cos(angle) * ONE + np.sin(angle) * ISIGMA3


class DephasedCurve:
    r"""
    :math:`\psi'(t) = \psi(t)e^{-I\sigma_3\delta_L(t)}`.

    Args:
        curve: Spinor curve
        delta: Callable ``t -> delta_L``
        delta_dot: Callable ``t -> d(delta_L)/dt``
    """

    def __init__(self, curve, delta, delta_dot):
        self.curve = curve
        self.delta = delta
        self.delta_dot = delta_dot
        if hasattr(curve, 'path_rotor'):
            self.path_rotor = curve.path_rotor
        if hasattr(curve, 't_span'):
            self.t_span = curve.t_span
        if hasattr(curve, 'chi_angle'):
            self.chi_angle = self._chi_angle

    def __call__(self, t):
        return self.curve(t) * _phase_factor(-self.delta(t))

    def derivative(self, t):
        E = _phase_factor(-self.delta(t))
        psi = self.curve(t)
        psi_dot = derivative_of(self.curve, t)
        return psi_dot * E - float(self.delta_dot(t)) * (psi * E * ISIGMA3)

    def _chi_angle(self, t):
        chi, chi_dot = self.curve.chi_angle(t)
        return chi + 2.0 * float(self.delta(t)), \
            chi_dot + 2.0 * float(self.delta_dot(t))


def remove_dynamic_phase(psi_curve, delta_L_curve):
    r"""
    Remove the local dynamic phase from a spinor curve.

    Args:
        psi_curve: Spinor curve
        delta_L_curve: Either a :class:`PhaseReport` (its ``delta_L`` column is
            interpolated with a cubic spline), a ``(t, delta_L)`` pair of
            arrays, or a callable with a ``derivative(t)`` method

    Returns:
        :class:`DephasedCurve`, whose Hermitian dynamic density vanishes up to
        the accuracy of `delta_L_curve`
    """

    if isinstance(delta_L_curve, PhaseReport):
        delta_L_curve = (delta_L_curve.phases['t'].to_numpy(),
                         delta_L_curve.phases['delta_L'].to_numpy())
    if isinstance(delta_L_curve, tuple):
        spline = CubicSpline(*delta_L_curve)
        return DephasedCurve(psi_curve, spline, spline.derivative())
    return DephasedCurve(psi_curve, delta_L_curve, delta_L_curve.derivative)


def ray_phase_difference(psi1, psi2):
    r"""
    Constant :math:`\alpha` with :math:`\psi_2 = \psi_1e^{I\sigma_3\alpha}`.

    :math:`\psi_1` and :math:`\psi_1I\sigma_3` are orthogonal and of equal
    length in coefficient space, so the best :math:`\alpha` comes from two
    projections.

    Returns:
        float: :math:`\alpha \in (-\pi, \pi]`

    Raises:
        DegenerateSpinorError: If either spinor is degenerate
        NotCorayError: If the relative residual of the best match exceeds
            :func:`sta_phase._settings.coray_tol`
    """

    psi1 = require_even(psi1, 'spinor')
    psi2 = require_even(psi2, 'spinor')
    polar_decompose(psi1)
    polar_decompose(psi2)
    A = psi1
    B = psi1 * ISIGMA3
    norm2 = np.dot(A.value, A.value)
    c = np.dot(psi2.value, A.value) / norm2
    s = np.dot(psi2.value, B.value) / norm2
    alpha = float(np.arctan2(s, c))
    residual = (psi2 - psi1 * _phase_factor(alpha)).norm() / psi2.norm()
    if residual > _settings.coray_tol():
        raise NotCorayError('spinors are not on the same ray '
                            '(relative residual %.3g)' % residual, residual)
    return np.pi if alpha <= -np.pi else alpha


@dataclass
class PhaseReport:
    """
    Result of :func:`integrate_phases`.

    Attributes:
        series: :class:`pandas.DataFrame` with :data:`SERIES_COLUMNS` (plus
            ``tau`` in proper-time mode), one row per time step
        phases: :class:`pandas.DataFrame` with the accumulated phases
            :data:`PHASE_COLUMNS`
        finals: dict of global phases keyed by :data:`FINALS_KEYS`
        meta: dict with step count, integrator, formula, tolerances and
            version
        scenario: Echo of the scenario description, if any
    """

    series: pd.DataFrame
    phases: pd.DataFrame
    finals: dict
    meta: dict
    scenario: dict = field(default=None)

    def state_at(self, index=-1):
        row = self.phases.iloc[index]
        return PhaseState(*(float(row[c]) for c in PHASE_COLUMNS))


RateSamples = namedtuple('RateSamples', ['rates', 'chi', 'beta', 'v0'])
RateSamples.__doc__ = r"""Local rates ``(n, 4)`` in the order delta_L, gamma_L,
delta_hat, gamma_hat (NaN where not requested), with :math:`\chi`,
:math:`\beta` and :math:`v^0` at the same times."""

# failures a single sample can raise while its kinematics are assembled
_SAMPLE_ERRORS = (DecompositionError, ContractViolationError, RangeError,
                  NumericalDerivativeError)


def _chi_series(traj, kins):
    chi_angle = getattr(traj, 'chi_angle', None)
    if chi_angle is not None:
        return np.array([chi_angle(k.t)[0] for k in kins])
    # R = R0 exp(-I sigma_3 chi / 2) up to sign
    half = []
    for k in kins:
        X = ~k.R0 * k.R
        half.append(np.arctan2(scalar_part(X * ISIGMA3), X.scalar_part))
    return 2.0 * unwrap_half_angle(half)


def _sample_pointwise(traj, nodes, want_full, want_simple):
    kins = []
    rates = np.full((nodes.size, 4), np.nan)
    for i, t in enumerate(nodes):
        try:
            k = kinematics_at(traj, t)
            if want_full:
                rates[i, 0] = dynamic_rate_full(k).total
                rates[i, 1] = geometric_rate_full(k).total
        except _SAMPLE_ERRORS as err:
            raise IntegrationError(str(err), t) from err
        if want_simple:
            rates[i, 2] = dynamic_rate_simple(k)
            rates[i, 3] = geometric_rate_simple(k)
        kins.append(k)
    return RateSamples(rates, _chi_series(traj, kins),
                       np.array([k.beta for k in kins]),
                       np.array([k.v0 for k in kins]))


def _sample_batched(traj, nodes, want_full, want_simple):
    batch = traj.evaluate(nodes)
    table = kinematics_table(batch)
    eps = _settings.degenerate_rho()
    rates = np.full((nodes.size, 4), np.nan)
    failures = [table.failure]
    with np.errstate(all='ignore'):
        omega_full = batch_scalar_product(table.omega0_full, table.S)
        omega_path = batch_scalar_product(table.omega0_path, table.S)
        if want_full:
            v0 = table.v0
            bracket = table.S_dot \
                - table.s_spatial * (table.beta_dot / v0)[:, None]
            correction = batch_scalar_product(table.v_spatial, bracket) / v0
            rates[:, 0] = -omega_full - correction
            rates[:, 1] = omega_path + correction
            failures.append(first_failure([
                (~(v0 > 0), lambda i: NonOrthochronousError(
                    'v0 = %g is not positive' % v0[i])),
                (~(table.varrho > eps), lambda i: DegenerateSpinorError(
                    'observer density %.3g is degenerate' % table.varrho[i])),
            ]))
    failures = [f for f in failures if f is not None]
    if failures:
        # min keeps the decomposition failure on a tie
        row, err = min(failures, key=lambda f: f[0])
        raise IntegrationError(str(err), nodes[row]) from err
    if want_simple:
        rates[:, 2] = -omega_full
        rates[:, 3] = omega_path
    return RateSamples(rates, np.asarray(batch.chi, dtype=float), table.beta,
                       table.v0)


def sample_rates(traj, nodes, formula='both', batched=None):
    """
    Local phase rates of a trajectory at the given times.

    Args:
        traj: Spinor curve
        nodes: 1-D array of times
        formula (str): ``'full'``, ``'simple'`` or ``'both'``
        batched (bool): Evaluate the whole grid at once through
            ``traj.evaluate``. Default is `None` (whenever the trajectory
            has ``evaluate``)

    Returns:
        :data:`RateSamples`

    Raises:
        IntegrationError: At the earliest time whose kinematics or full
            rates cannot be formed
    """

    nodes = np.asarray(nodes, dtype=float).reshape(-1)
    want_full = formula in ('full', 'both')
    want_simple = formula in ('simple', 'both')
    if batched is None:
        batched = hasattr(traj, 'evaluate')
    if batched:
        return _sample_batched(traj, nodes, want_full, want_simple)
    return _sample_pointwise(traj, nodes, want_full, want_simple)


def integrate_phases(traj, steps=None, formula='both', integrator=None,
                     proper_time=False, t_span=None):
    r"""
    Integrate the four local phase rates along a trajectory.

    Args:
        traj: Spinor curve with a ``t_span`` attribute (or pass `t_span`)
        steps (int): Number of steps, at least 2. Default is `None` (use
            :data:`sta_phase._settings.DEFAULT_STEPS`)
        formula (str): ``'full'``, ``'simple'`` or ``'both'``; rates not
            requested are reported as NaN
        integrator (str): ``'rk4'`` (rates sampled on the half-step grid) or
            ``'trapezoid'``. Default is `None` (use
            :data:`sta_phase._settings.DEFAULT_INTEGRATOR`)
        proper_time (bool): Report rates per unit proper time,
            :math:`d/d\tau = v^0 d/dt`, and add a ``tau`` column. Phases are
            reparameterization invariant, so the finals do not change
        t_span (tuple): ``(t0, t1)`` override

    Returns:
        :class:`PhaseReport`

    Raises:
        ValueError: If the arguments are out of range
        IntegrationError: If the spinor cannot be decomposed or
            differentiated at some time; the failing time is attached
    """

    if steps is None:
        steps = _settings.DEFAULT_STEPS
    if integrator is None:
        integrator = _settings.DEFAULT_INTEGRATOR
    if isinstance(steps, bool) or int(steps) != steps or steps < 2:
        raise ValueError('steps must be an integer >= 2, got %r' % (steps,))
    steps = int(steps)
    if formula not in _settings.FORMULAS:
        raise ValueError('formula must be one of %s' % (_settings.FORMULAS,))
    if integrator not in _settings.INTEGRATORS:
        raise ValueError('integrator must be one of %s'
                         % (_settings.INTEGRATORS,))
    t0, t1 = traj.t_span if t_span is None else t_span
    if not t1 > t0:
        raise ValueError('trajectory duration must be positive')

    h = (t1 - t0) / steps
    substeps = 2 if integrator == 'rk4' else 1
    nodes = t0 + (h / substeps) * np.arange(substeps * steps + 1)
    nodes[-1] = t1
    logger.info('integrating %s phases over [%g, %g]: %d %s steps',
                formula, t0, t1, steps, integrator)

    want_full = formula in ('full', 'both')
    rates, chi, beta, v0 = sample_rates(traj, nodes, formula)
    if integrator == 'rk4':
        phases = rk4_cumulative(rates, h)
        tau = rk4_cumulative(1.0 / v0, h)
    else:
        phases = trapezoid_cumulative(rates, nodes)
        tau = trapezoid_cumulative(1.0 / v0, nodes)

    grid = slice(None, None, substeps)
    t_grid = nodes[grid]
    chi_grid = chi[grid]
    ledger = phases[:, 0:2] if want_full else phases[:, 2:4]
    residual = ledger.sum(axis=1) + 0.5 * (chi_grid - chi_grid[0])

    rate_grid = rates[grid]
    if proper_time:
        rate_grid = rate_grid * v0[grid, None]
    series = pd.DataFrame({'t': t_grid,
                           'delta_L_rate': rate_grid[:, 0],
                           'gamma_L_rate': rate_grid[:, 1],
                           'delta_hat_rate': rate_grid[:, 2],
                           'gamma_hat_rate': rate_grid[:, 3],
                           'beta': beta[grid],
                           'v0': v0[grid],
                           'consistency_residual': residual},
                          columns=SERIES_COLUMNS)
    if proper_time:
        series['tau'] = tau

    phase_frame = pd.DataFrame({'t': t_grid,
                                'delta_L': phases[:, 0],
                                'gamma_L': phases[:, 1],
                                'delta_hat': phases[:, 2],
                                'gamma_hat': phases[:, 3],
                                'chi': chi_grid}, columns=PHASE_COLUMNS)
    # + 0.0 turns -0.0 into 0.0
    finals = dict(zip(FINALS_KEYS,
                      [float(x) + 0.0 for x in phases[-1]]
                      + [float(-0.5 * (chi_grid[-1] - chi_grid[0])) + 0.0]))
    meta = {'steps': steps,
            'integrator': integrator,
            'formula': formula,
            'proper_time': bool(proper_time),
            't_span': [float(t0), float(t1)],
            'tolerances': _settings.snapshot(),
            'version': __version__}
    logger.info('finished: max |ledger residual| = %.3g',
                float(np.nanmax(np.abs(residual))))
    return PhaseReport(series=series, phases=phase_frame, finals=finals,
                       meta=meta, scenario=getattr(traj, 'spec', None))
