r"""
Closed-form spinor trajectories and scenario files.

Every trajectory is written as

.. math::

    \psi(t) = \rho(t)^{1/2}e^{I\beta(t)/2}R_0(t)e^{-I\sigma_3\chi(t)/2},
    \qquad R_0(t) = \prod_k e^{f_k(t)B_k},

with each :math:`f_k`, :math:`\chi`, :math:`\beta` and :math:`\rho` a finite
polynomial plus sine :class:`Series`, so that :math:`\dot{\psi}` and
:math:`\dot{R}_0` are exact. All built-ins are free particles (:math:`A = 0`).

A scenario file is a JSON object with exactly the keys ``kind``, ``params``,
``duration`` and ``steps``; the parameters allowed for each kind are listed in
:data:`SCENARIO_SCHEMA`. Series-valued parameters are either numbers or
objects ``{"poly": [c0, c1, ...], "trig": [[amp, freq, phase], ...]}``.
"""

import json
import logging
import numbers
from collections import namedtuple

import numpy as np
from numpy.polynomial import polynomial as P

from .. import _settings
from ..algorithms.ga_core import (GAMMA0, I, ISIGMA2, ISIGMA3, METRIC, ONE,
                                  SIGMA1, Multivector, batch_product,
                                  relative_vector)
from ..algorithms.helpers import central_difference
from ..algorithms.rotor import Rotor, boost_rotor, exp_bivector
from ..algorithms.spinor import Spinor, kinematics_at
from ..errors import DegenerateSpinorError, ScenarioError

logger = logging.getLogger(__name__)

ScenarioSpec = namedtuple('ScenarioSpec', ['kind', 'params', 'duration',
                                           'steps'])
ScenarioSpec.__doc__ = """Validated scenario description; ``duration`` may be
`None` (use the kind's default)."""

TrajectorySample = namedtuple('TrajectorySample',
                              ['t', 'psi', 'psi_dot', 'kinematics'])

TrajectoryBatch = namedtuple('TrajectoryBatch', ['t', 'psi', 'psi_dot', 'R0',
                                                 'R0_dot', 'chi', 'chi_dot'])
TrajectoryBatch.__doc__ = """Trajectory on a time grid: ``(n, 16)`` rows for
the spinor, its derivative and the path rotor, ``(n,)`` arrays otherwise."""

MAX_BOOSTED_PRECESSION_RAPIDITY = 5.0
SIGNS = ('electron', 'positron')


class Series:
    r"""
    Real function :math:`\sum_k c_kt^k + \sum_j a_j\sin(\nu_jt + p_j)`.

    Args:
        poly: Polynomial coefficients, lowest order first
        trig: ``(amp, freq, phase)`` triples
    """

    def __init__(self, poly=(), trig=()):
        try:
            self.poly = np.array(poly, dtype=float).reshape(-1)
            self.trig = np.array(trig, dtype=float).reshape(-1, 3)
        except (TypeError, ValueError) as err:
            raise ScenarioError('bad series coefficients: %s' % err) from err
        if not (np.all(np.isfinite(self.poly))
                and np.all(np.isfinite(self.trig))):
            raise ScenarioError('series coefficients must be finite')
        self._dpoly = P.polyder(self.poly) if self.poly.size else self.poly

    @classmethod
    def constant(cls, value):
        return cls(poly=[value])

    @classmethod
    def linear(cls, rate, offset=0.0):
        return cls(poly=[offset, rate])

    @classmethod
    def coerce(cls, value, field=None):
        """Build a series from a number, a mapping or another series."""
        if isinstance(value, Series):
            return value
        if isinstance(value, numbers.Real) and not isinstance(value, bool):
            return cls.constant(value)
        if isinstance(value, dict):
            unknown = set(value) - {'poly', 'trig'}
            if unknown:
                raise ScenarioError('unknown series key %r'
                                    % sorted(unknown)[0], field=field)
            try:
                return cls(value.get('poly', ()), value.get('trig', ()))
            except ScenarioError as err:
                raise ScenarioError(str(err), field=field) from err
        raise ScenarioError('expected a number or a series object, got %r'
                            % (value,), field=field)

    def __call__(self, t):
        out = P.polyval(t, self.poly) if self.poly.size else 0.0
        for amp, freq, phase in self.trig:
            out += amp * np.sin(freq * t + phase)
        return float(out)

    def derivative(self, t):
        out = P.polyval(t, self._dpoly) if self._dpoly.size else 0.0
        for amp, freq, phase in self.trig:
            out += amp * freq * np.cos(freq * t + phase)
        return float(out)

    def values(self, ts):
        """Vectorized :meth:`__call__` over an array of times."""
        ts = np.asarray(ts, dtype=float)
        out = P.polyval(ts, self.poly) if self.poly.size else np.zeros_like(ts)
        for amp, freq, phase in self.trig:
            out = out + amp * np.sin(freq * ts + phase)
        return out

    def rates(self, ts):
        """Vectorized :meth:`derivative` over an array of times."""
        ts = np.asarray(ts, dtype=float)
        out = P.polyval(ts, self._dpoly) if self._dpoly.size \
            else np.zeros_like(ts)
        for amp, freq, phase in self.trig:
            out = out + amp * freq * np.cos(freq * ts + phase)
        return out

    def __add__(self, other):
        other = Series.coerce(other)
        n = max(self.poly.size, other.poly.size)
        poly = np.zeros(n)
        poly[:self.poly.size] += self.poly
        poly[:other.poly.size] += other.poly
        return Series(poly, np.vstack([self.trig, other.trig]))

    __radd__ = __add__

    def scaled(self, k):
        trig = self.trig.copy()
        trig[:, 0] *= k
        return Series(k * self.poly, trig)

    def __neg__(self):
        return self.scaled(-1.0)

    def __sub__(self, other):
        return self + (-Series.coerce(other))

    def to_dict(self):
        return {'poly': self.poly.tolist(), 'trig': self.trig.tolist()}

    def __repr__(self):
        return 'Series(poly=%s, trig=%s)' % (self.poly.tolist(),
                                             self.trig.tolist())


def _amplitude(rho, beta):
    # rho^{1/2} exp(I beta / 2)
    if rho <= 0:
        raise DegenerateSpinorError('trajectory density rho = %g' % rho)
    return np.sqrt(rho) * (np.cos(beta / 2) * ONE + np.sin(beta / 2) * I)


def _phase_rotor(chi):
    # exp(-I sigma_3 chi / 2)
    return np.cos(chi / 2) * ONE - np.sin(chi / 2) * ISIGMA3


def _exp_rows(x, B):
    r"""
    Rows of :math:`e^{x_iB}` for a fixed bivector :math:`B`.

    :math:`B^2 = \alpha` is a scalar for every built-in factor, giving the
    circular, hyperbolic or null closed form; otherwise each sample goes
    through :func:`~sta_phase.algorithms.rotor.exp_bivector`.
    """

    B2 = B * B
    alpha = B2.scalar_part
    if abs(B2.pseudoscalar_part) > _settings.grade_tol() * max(1.0,
                                                               abs(alpha)):
        return np.array([exp_bivector(xi * B).value for xi in x])
    if alpha < 0:
        n = np.sqrt(-alpha)
        c, s = np.cos(n * x), np.sin(n * x) / n
    elif alpha > 0:
        n = np.sqrt(alpha)
        c, s = np.cosh(n * x), np.sinh(n * x) / n
    else:
        c, s = np.ones_like(x), x
    return np.outer(c, ONE.value) + np.outer(s, B.value)


class SpinorTrajectory:
    r"""
    Spinor curve with exact derivatives, see the module docstring.

    Args:
        factors: Sequence of ``(Series, bivector)`` pairs; the path rotor is
            the ordered product of :math:`e^{f_k(t)B_k}`
        chi: :class:`Series` for :math:`\chi(t)`
        beta: :class:`Series` for :math:`\beta(t)`. Default is 0
        rho: :class:`Series` for :math:`\rho(t)`. Default is 1
        duration (float): Length of the time span starting at 0
        spec (dict): Scenario echo written into reports
        field: Optional closed-form field
            (:class:`PlaneWaveField`) this curve is a streamline of
    """

    def __init__(self, factors, chi=None, beta=None, rho=None, duration=1.0,
                 spec=None, field=None):
        self.factors = tuple((Series.coerce(f), B) for f, B in factors)
        self.chi = Series() if chi is None else Series.coerce(chi)
        self.beta = Series() if beta is None else Series.coerce(beta)
        self.rho = Series.constant(1.0) if rho is None else Series.coerce(rho)
        if not duration > 0:
            raise ScenarioError('duration must be positive, got %r'
                                % (duration,), field='duration')
        self.duration = float(duration)
        self.t_span = (0.0, self.duration)
        self.domain = (-np.inf, np.inf)
        self.spec = spec
        self.field = field
        # (t, (R0, R0_dot)) of the latest path_rotor call
        self._last_path = None

    def path_rotor(self, t):
        r"""
        :math:`R_0(t)` and :math:`\dot{R}_0(t)`.

        Each factor satisfies :math:`\frac{d}{dt}e^{fB} = \dot{f}Be^{fB}`, and
        the product rule runs over the ordered factors. The latest result is
        kept, since one sample asks for the path rotor several times.
        """

        if self._last_path is not None and self._last_path[0] == t:
            return self._last_path[1]
        exps = [exp_bivector(f(t) * B) for f, B in self.factors]
        R0 = ONE
        R0_dot = Multivector()
        for (f, B), E in zip(self.factors, exps):
            R0_dot = R0_dot * E + f.derivative(t) * (R0 * B * E)
            R0 = R0 * E
        out = (Rotor(R0, check=False), R0_dot)
        self._last_path = (t, out)
        return out

    def _path_rows(self, ts):
        R0 = np.tile(ONE.value, (ts.size, 1))
        R0_dot = np.zeros_like(R0)
        for f, B in self.factors:
            E = _exp_rows(f.values(ts), B)
            R0_dot = batch_product(R0_dot, E) \
                + f.rates(ts)[:, None] * batch_product(batch_product(R0, B),
                                                        E)
            R0 = batch_product(R0, E)
        return R0, R0_dot

    def evaluate(self, ts):
        """
        Spinor, its derivative and the path rotor on a grid of times.

        Samples where the density is not positive come back with a zero
        spinor and a non-finite derivative, to be flagged by
        :func:`~sta_phase.algorithms.spinor.kinematics_table`.

        Returns:
            :data:`TrajectoryBatch` of ``(n, 16)`` rows
        """

        ts = np.asarray(ts, dtype=float).reshape(-1)
        R0, R0_dot = self._path_rows(ts)
        chi, chi_dot = self.chi.values(ts), self.chi.rates(ts)
        beta, beta_dot = self.beta.values(ts), self.beta.rates(ts)
        rho, rho_dot = self.rho.values(ts), self.rho.rates(ts)

        phase = np.outer(np.cos(chi / 2), ONE.value) \
            - np.outer(np.sin(chi / 2), ISIGMA3.value)
        R = batch_product(R0, phase)
        R_dot = batch_product(R0_dot, phase) \
            - (0.5 * chi_dot)[:, None] * batch_product(R, ISIGMA3)
        with np.errstate(divide='ignore', invalid='ignore'):
            root = np.sqrt(np.maximum(rho, 0.0))
            amp = np.outer(root * np.cos(beta / 2), ONE.value) \
                + np.outer(root * np.sin(beta / 2), I.value)
            psi = batch_product(amp, R)
            scale = np.outer(0.5 * rho_dot / rho, ONE.value) \
                + np.outer(0.5 * beta_dot, I.value)
            psi_dot = batch_product(scale, psi) + batch_product(amp, R_dot)
        return TrajectoryBatch(ts, psi, psi_dot, R0, R0_dot, chi, chi_dot)

    def chi_angle(self, t):
        return self.chi(t), self.chi.derivative(t)

    def beta_angle(self, t):
        return self.beta(t), self.beta.derivative(t)

    def rotor(self, t):
        R0, _ = self.path_rotor(t)
        return Rotor(R0 * _phase_rotor(self.chi(t)), check=False)

    def rotor_derivative(self, t):
        R0, R0_dot = self.path_rotor(t)
        chi, chi_dot = self.chi_angle(t)
        E = _phase_rotor(chi)
        return R0_dot * E - (0.5 * chi_dot) * (R0 * E * ISIGMA3)

    def __call__(self, t):
        return Spinor(_amplitude(self.rho(t), self.beta(t)) * self.rotor(t))

    def derivative(self, t):
        rho, rho_dot = self.rho(t), self.rho.derivative(t)
        beta, beta_dot = self.beta_angle(t)
        amp = _amplitude(rho, beta)
        R0, R0_dot = self.path_rotor(t)
        chi, chi_dot = self.chi_angle(t)
        E = _phase_rotor(chi)
        R = R0 * E
        R_dot = R0_dot * E - (0.5 * chi_dot) * (R * ISIGMA3)
        scale = (0.5 * rho_dot / rho) * ONE + (0.5 * beta_dot) * I
        return scale * (amp * R) + amp * R_dot

    def sample(self, t):
        return TrajectorySample(float(t), self(t), self.derivative(t),
                                kinematics_at(self, t))

    def with_phase_shift(self, alpha):
        r"""
        Trajectory of :math:`\psi(t)e^{I\sigma_3\alpha(t)}`.

        The path rotor is untouched and :math:`\chi \to \chi - 2\alpha`.
        """

        alpha = Series.coerce(alpha, field='alpha')
        spec = None
        if self.spec is not None:
            spec = dict(self.spec, phase_shift=alpha.to_dict())
        return SpinorTrajectory(self.factors, self.chi - alpha.scaled(2.0),
                                self.beta, self.rho, self.duration, spec)


class TimeWarpedTrajectory:
    r"""
    Reparameterized trajectory :math:`s \mapsto \psi(g(s))`.

    Args:
        trajectory: :class:`SpinorTrajectory`
        time_map: :class:`Series` :math:`g`, monotonic on ``[0, duration]``
            with :math:`g(0) = 0`
        duration (float): New time span
    """

    def __init__(self, trajectory, time_map, duration):
        self.trajectory = trajectory
        self.time_map = Series.coerce(time_map, field='time_map')
        if not duration > 0:
            raise ScenarioError('duration must be positive', field='duration')
        self.duration = float(duration)
        self.t_span = (0.0, self.duration)
        self.domain = (-np.inf, np.inf)
        self.spec = trajectory.spec

    def _warp(self, s):
        return self.time_map(s), self.time_map.derivative(s)

    def __call__(self, s):
        return self.trajectory(self._warp(s)[0])

    def derivative(self, s):
        t, dt = self._warp(s)
        return dt * self.trajectory.derivative(t)

    def path_rotor(self, s):
        t, dt = self._warp(s)
        R0, R0_dot = self.trajectory.path_rotor(t)
        return R0, dt * R0_dot

    def evaluate(self, ss):
        ss = np.asarray(ss, dtype=float).reshape(-1)
        dt = self.time_map.rates(ss)
        inner = self.trajectory.evaluate(self.time_map.values(ss))
        return inner._replace(t=ss, psi_dot=dt[:, None] * inner.psi_dot,
                              R0_dot=dt[:, None] * inner.R0_dot,
                              chi_dot=dt * inner.chi_dot)

    def chi_angle(self, s):
        t, dt = self._warp(s)
        chi, chi_dot = self.trajectory.chi_angle(t)
        return chi, dt * chi_dot

    def beta_angle(self, s):
        t, dt = self._warp(s)
        beta, beta_dot = self.trajectory.beta_angle(t)
        return beta, dt * beta_dot


class PlaneWaveField:
    r"""
    Free-particle plane wave as a spacetime field.

    Electron: :math:`\psi(x) = Le^{-I\sigma_3\omega\,v\cdot x}`; positron:
    :math:`\psi(x) = ILe^{+I\sigma_3\omega\,v\cdot x}`, with
    :math:`v = L\gamma_0\tilde{L}` and :math:`\omega = m + \delta`. A nonzero
    detuning :math:`\delta` puts the wave off shell.

    Args:
        m (float): Mass, positive
        b: Boost rapidities. Default is rest
        sign (str): ``'electron'`` or ``'positron'``
        detuning (float): Frequency offset
        charge (float): Charge used with a potential in
            :func:`~sta_phase.tools.matrix_bridge.dirac_residual`
    """

    def __init__(self, m, b=(0.0, 0.0, 0.0), sign='electron', detuning=0.0,
                 charge=1.0):
        if not m > 0:
            raise ScenarioError('mass must be positive, got %r' % (m,),
                                field='m')
        if sign not in SIGNS:
            raise ScenarioError('sign must be one of %s' % (SIGNS,),
                                field='sign')
        self.m = float(m)
        self.sign = sign
        self.detuning = float(detuning)
        self.charge = float(charge)
        self.L = boost_rotor(b)
        self.velocity = self.L * GAMMA0 * ~self.L
        # v_mu = g_mu_mu v^mu
        self.v_lower = np.array([self.velocity[1 << mu] for mu in range(4)]) \
            * METRIC
        self._prefix = self.L if sign == 'electron' else I * self.L
        self._generator = (-1.0 if sign == 'electron' else 1.0) * ISIGMA3

    @property
    def frequency(self):
        return self.m + self.detuning

    def _phase(self, x):
        # v.x = v_mu x^mu
        return float(np.dot(self.v_lower, np.asarray(x, dtype=float)))

    def __call__(self, x):
        angle = self.frequency * self._phase(x)
        return Spinor(self._prefix * exp_bivector(angle * self._generator))

    def gradient(self, x):
        r""":math:`\partial_\mu\psi = \omega v_\mu\psi(\mp I\sigma_3)`."""
        psi_gen = self(x) * self._generator
        return [self.frequency * vm * psi_gen for vm in self.v_lower]


def _echo(kind, duration, **params):
    out = {}
    for key, value in params.items():
        if isinstance(value, Series):
            value = value.to_dict()
        elif isinstance(value, np.ndarray):
            value = value.tolist()
        elif isinstance(value, tuple):
            value = list(value)
        out[key] = value
    return {'kind': kind, 'params': out, 'duration': float(duration)}


def _check_positive(value, field):
    if not value > 0:
        raise ScenarioError('must be positive, got %r' % (value,),
                            field=field)


def _check_cone(theta0):
    if not 0.0 <= theta0 <= np.pi:
        raise ScenarioError('cone angle must lie in [0, pi], got %r'
                            % (theta0,), field='theta0')


def _loop_duration(omega_phi, duration):
    if duration is not None:
        return duration
    if omega_phi == 0:
        return 1.0
    return 2.0 * np.pi / abs(omega_phi)


def rest_plane_wave(m, sign='electron', duration=1.0, e=1.0):
    r"""
    Plane wave at rest.

    Electron: :math:`\psi = e^{-I\sigma_3mt}`, so :math:`\chi = 2mt`;
    positron: :math:`\psi = Ie^{+I\sigma_3mt}`, so :math:`\beta = \pi` and
    :math:`\chi = -2mt`.
    """

    field = PlaneWaveField(m, sign=sign, charge=e)
    if sign == 'electron':
        chi, beta = Series.linear(2.0 * m), Series()
    else:
        chi, beta = Series.linear(-2.0 * m), Series.constant(np.pi)
    return SpinorTrajectory((), chi=chi, beta=beta, duration=duration,
                            spec=_echo('rest_plane_wave', duration, m=m,
                                       sign=sign, e=e),
                            field=field)


def boosted_plane_wave(m, b, sign='electron', duration=1.0, e=1.0):
    r"""
    Plane wave moving with rapidity vector `b`, sampled along its streamline.

    On :math:`x = v\tau` the phase is :math:`v\cdot x = \tau = t/v^0`, so
    :math:`\chi = \pm 2mt/v^0`.
    """

    field = PlaneWaveField(m, b=b, sign=sign, charge=e)
    v0 = field.velocity[0b0001]
    rate = 2.0 * m / v0
    if sign == 'electron':
        chi, beta = Series.linear(rate), Series()
    else:
        chi, beta = Series.linear(-rate), Series.constant(np.pi)
    boost = relative_vector(-0.5 * np.asarray(b, dtype=float))
    return SpinorTrajectory(((Series.constant(1.0), boost),), chi=chi,
                            beta=beta, duration=duration,
                            spec=_echo('boosted_plane_wave', duration, m=m,
                                       b=b, sign=sign, e=e),
                            field=field)


def _precession_factors(theta0, omega_phi, b=0.0):
    factors = [(Series.linear(omega_phi), -0.5 * ISIGMA3)]
    if b != 0:
        factors.append((Series.constant(b), -0.5 * SIGMA1))
    factors.append((Series.constant(theta0), -0.5 * ISIGMA2))
    return factors


def precession_loop(theta0, omega_phi, duration=None, chi_rate=0.0):
    r"""
    Spin precessing on a cone,
    :math:`R_0 = e^{-I\sigma_3\omega_\phi t/2}e^{-I\sigma_2\theta_0/2}`.

    Args:
        theta0 (float): Cone angle in :math:`[0, \pi]`
        omega_phi (float): Azimuthal angular speed
        duration (float): Default is one full loop, :math:`2\pi/|\omega_\phi|`
        chi_rate (float): Constant :math:`\dot{\chi}`
    """

    _check_cone(theta0)
    duration = _loop_duration(omega_phi, duration)
    return SpinorTrajectory(_precession_factors(theta0, omega_phi),
                            chi=Series.linear(chi_rate), duration=duration,
                            spec=_echo('precession_loop', duration,
                                       theta0=theta0, omega_phi=omega_phi,
                                       chi_rate=chi_rate))


def precession_eigencurve(theta0, omega_phi, duration=None):
    r"""
    Adiabatic eigenfunction curve of a spin aligned with a precessing field.

    Same path as :func:`precession_loop` in the single-valued gauge
    :math:`\chi_m = -\phi`.
    """

    traj = precession_loop(theta0, omega_phi, duration, chi_rate=-omega_phi)
    traj.spec = _echo('precession_eigencurve', traj.duration, theta0=theta0,
                      omega_phi=omega_phi)
    return traj


def boosted_precession(b, theta0, omega_phi, duration=None, chi_rate=0.0):
    r"""
    Precession loop carried by a boost that turns with the spin,
    :math:`R = e^{-I\sigma_3\phi/2}e^{-b\sigma_1/2}e^{-I\sigma_2\theta_0/2}`.

    The relative velocity rotates, so the frame correction of the full rates
    is nonzero. `b` = 0 reduces to :func:`precession_loop`.

    Raises:
        ScenarioError: If :math:`|b| > 5`
    """

    if not abs(b) <= MAX_BOOSTED_PRECESSION_RAPIDITY:
        raise ScenarioError('rapidity must satisfy |b| <= %g, got %r'
                            % (MAX_BOOSTED_PRECESSION_RAPIDITY, b), field='b')
    _check_cone(theta0)
    duration = _loop_duration(omega_phi, duration)
    return SpinorTrajectory(_precession_factors(theta0, omega_phi, b),
                            chi=Series.linear(chi_rate), duration=duration,
                            spec=_echo('boosted_precession', duration, b=b,
                                       theta0=theta0, omega_phi=omega_phi,
                                       chi_rate=chi_rate))


def beta_ramp(beta_rate, b=1.0, theta0=np.pi / 3, omega_phi=1.0,
              duration=1.0):
    r"""
    :func:`boosted_precession` with a chiral angle :math:`\beta = \dot{\beta}t`.
    """

    traj = boosted_precession(b, theta0, omega_phi, duration)
    traj.beta = Series.linear(beta_rate)
    traj.spec = _echo('beta_ramp', duration, beta_rate=beta_rate, b=b,
                      theta0=theta0, omega_phi=omega_phi)
    return traj


def custom_euler(phi=0.0, theta=0.0, chi=0.0, beta=0.0, rho=1.0,
                 rapidity=0.0, boost_axis=(1.0, 0.0, 0.0), duration=1.0):
    r"""
    Trajectory from Euler-angle, chiral-angle, density and rapidity series,
    :math:`R = e^{-\eta\hat{n}\cdot\sigma/2}e^{-I\sigma_3\phi/2}
    e^{-I\sigma_2\theta/2}e^{-I\sigma_3\chi/2}`.

    All arguments except `boost_axis` and `duration` accept numbers, series
    or series mappings. With every default the spinor is constant.
    """

    axis = np.asarray(boost_axis, dtype=float)
    if axis.shape != (3,) or not np.linalg.norm(axis) > 0:
        raise ScenarioError('boost axis must be a nonzero 3-vector',
                            field='boost_axis')
    axis = axis / np.linalg.norm(axis)
    series = {name: Series.coerce(value, field=name)
              for name, value in (('phi', phi), ('theta', theta),
                                  ('chi', chi), ('beta', beta), ('rho', rho),
                                  ('rapidity', rapidity))}
    factors = ((series['rapidity'], relative_vector(-0.5 * axis)),
               (series['phi'], -0.5 * ISIGMA3),
               (series['theta'], -0.5 * ISIGMA2))
    return SpinorTrajectory(factors, chi=series['chi'], beta=series['beta'],
                            rho=series['rho'], duration=duration,
                            spec=_echo('custom_euler', duration,
                                       boost_axis=axis, **series))


def finite_difference_rotor(curve, t, h=None):
    r"""
    :math:`(R(t+h) - R(t-h))/2h`.

    Raises:
        RangeError: If `curve` has a ``domain`` that does not contain
            :math:`[t-h, t+h]`
    """

    return central_difference(curve, t, h)


def gauge_shift(trajectory, alpha):
    r"""Trajectory of :math:`\psi e^{I\sigma_3\alpha(t)}` for a series :math:`\alpha`."""
    return trajectory.with_phase_shift(alpha)


def reparameterize(trajectory, time_map, duration):
    """Same path traversed on a new clock, see :class:`TimeWarpedTrajectory`."""
    return TimeWarpedTrajectory(trajectory, time_map, duration)


_REQUIRED = object()

# kind -> {param: (value type, default)}
SCENARIO_SCHEMA = {
    'rest_plane_wave': {'m': ('real', _REQUIRED),
                        'sign': ('sign', 'electron'),
                        'e': ('real', 1.0)},
    'boosted_plane_wave': {'m': ('real', _REQUIRED),
                           'b': ('vector3', _REQUIRED),
                           'sign': ('sign', 'electron'),
                           'e': ('real', 1.0)},
    'precession_loop': {'theta0': ('real', _REQUIRED),
                        'omega_phi': ('real', _REQUIRED),
                        'chi_rate': ('real', 0.0)},
    'precession_eigencurve': {'theta0': ('real', _REQUIRED),
                              'omega_phi': ('real', _REQUIRED)},
    'boosted_precession': {'b': ('real', _REQUIRED),
                           'theta0': ('real', _REQUIRED),
                           'omega_phi': ('real', _REQUIRED),
                           'chi_rate': ('real', 0.0)},
    'beta_ramp': {'beta_rate': ('real', _REQUIRED),
                  'b': ('real', 1.0),
                  'theta0': ('real', np.pi / 3),
                  'omega_phi': ('real', 1.0)},
    'custom_euler': {'phi': ('series', 0.0),
                     'theta': ('series', 0.0),
                     'chi': ('series', 0.0),
                     'beta': ('series', 0.0),
                     'rho': ('series', 1.0),
                     'rapidity': ('series', 0.0),
                     'boost_axis': ('vector3', [1.0, 0.0, 0.0])},
}

_BUILDERS = {'rest_plane_wave': rest_plane_wave,
             'boosted_plane_wave': boosted_plane_wave,
             'precession_loop': precession_loop,
             'precession_eigencurve': precession_eigencurve,
             'boosted_precession': boosted_precession,
             'beta_ramp': beta_ramp,
             'custom_euler': custom_euler}

_TOP_LEVEL_KEYS = ('kind', 'params', 'duration', 'steps')


def _is_real(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool) \
        and np.isfinite(value)


def _check_value(kind, value, field):
    if kind == 'real':
        if not _is_real(value):
            raise ScenarioError('expected a finite number, got %r' % (value,),
                                field=field)
        return float(value)
    if kind == 'sign':
        if value not in SIGNS:
            raise ScenarioError('expected one of %s, got %r' % (SIGNS, value),
                                field=field)
        return value
    if kind == 'vector3':
        if not (isinstance(value, (list, tuple)) and len(value) == 3
                and all(_is_real(x) for x in value)):
            raise ScenarioError('expected a list of 3 numbers, got %r'
                                % (value,), field=field)
        return [float(x) for x in value]
    Series.coerce(value, field=field)
    return value


def validate_scenario(data):
    """
    Check a decoded scenario mapping against :data:`SCENARIO_SCHEMA`.

    Returns:
        :data:`ScenarioSpec` with defaults filled in

    Raises:
        ScenarioError: On the first violation, naming the field
    """

    if not isinstance(data, dict):
        raise ScenarioError('scenario must be a JSON object')
    for key in data:
        if key not in _TOP_LEVEL_KEYS:
            raise ScenarioError('unknown key', field=key)
    if 'kind' not in data:
        raise ScenarioError('missing required key', field='kind')
    kind = data['kind']
    if kind not in SCENARIO_SCHEMA:
        raise ScenarioError('unknown kind %r; expected one of %s'
                            % (kind, sorted(SCENARIO_SCHEMA)), field='kind')
    params = data.get('params', {})
    if not isinstance(params, dict):
        raise ScenarioError('params must be an object', field='params')
    schema = SCENARIO_SCHEMA[kind]
    for key in params:
        if key not in schema:
            raise ScenarioError('unknown parameter for kind %r' % kind,
                                field='params.' + key)
    checked = {}
    for key, (vtype, default) in schema.items():
        if key not in params:
            if default is _REQUIRED:
                raise ScenarioError('missing required parameter',
                                    field='params.' + key)
            checked[key] = default
            continue
        checked[key] = _check_value(vtype, params[key], 'params.' + key)

    duration = data.get('duration')
    if duration is not None:
        if not _is_real(duration) or not duration > 0:
            raise ScenarioError('duration must be a positive number',
                                field='duration')
        duration = float(duration)
    steps = data.get('steps', _settings.DEFAULT_STEPS)
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 2:
        raise ScenarioError('steps must be an integer >= 2', field='steps')
    return ScenarioSpec(kind, checked, duration, steps)


def build_trajectory(spec):
    """
    Trajectory described by a :data:`ScenarioSpec`.

    Raises:
        ScenarioError: If a parameter is out of range
    """

    kwargs = dict(spec.params)
    if spec.duration is not None:
        kwargs['duration'] = spec.duration
    traj = _BUILDERS[spec.kind](**kwargs)
    traj.spec = dict(traj.spec, steps=spec.steps)
    logger.debug('built %s scenario over [0, %g]', spec.kind, traj.duration)
    return traj


def _line_of(text, field):
    if field is None:
        return None
    needle = '"%s"' % field.split('.')[-1]
    pos = text.find(needle)
    if pos < 0:
        return None
    return text.count('\n', 0, pos) + 1


def parse_scenario(text):
    """
    Parse and validate scenario JSON text.

    Range checks run by building the trajectory once, so a returned spec is
    always buildable.

    Raises:
        ScenarioError: With the field name and, where it can be located, the
            line number
    """

    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ScenarioError('invalid JSON: %s' % err.msg,
                            line=err.lineno) from err
    try:
        spec = validate_scenario(data)
        build_trajectory(spec)
    except ScenarioError as err:
        if err.line is not None:
            raise
        field = err.field
        if field is not None and not field.startswith('params.') \
                and field not in _TOP_LEVEL_KEYS and 'params' in data:
            field = 'params.' + field
        message = str(err).split(': ', 1)[-1] if err.field else str(err)
        raise ScenarioError(message, field=field,
                            line=_line_of(text, field)) from err
    return spec


def load_scenario(path):
    """
    Read and validate a scenario file.

    Raises:
        ScenarioError: If the file cannot be read or violates the schema
    """

    try:
        with open(path, encoding='utf-8') as f:
            text = f.read()
    except OSError as err:
        raise ScenarioError('cannot read scenario file %s: %s'
                            % (path, err.strerror)) from err
    return parse_scenario(text)


def random_custom_euler(rng, max_rapidity=1.0, duration=1.0):
    """
    :func:`custom_euler` trajectory with random smooth series.

    Every angle gets a random linear drift plus one sine term, the density
    stays within ``[0.5, 1.5]`` and the rapidity within ``[0, max_rapidity]``.

    Args:
        rng: :class:`numpy.random.Generator`
    """

    def smooth(scale):
        return Series(poly=rng.uniform(-scale, scale, 2),
                      trig=[[rng.uniform(-scale, scale), rng.uniform(0.5, 3),
                             rng.uniform(-np.pi, np.pi)]])

    half = 0.5 * max_rapidity
    rapidity = Series(poly=[half],
                      trig=[[half * rng.uniform(0, 1), rng.uniform(0.5, 3),
                             rng.uniform(-np.pi, np.pi)]])
    rho = Series(poly=[1.0], trig=[[rng.uniform(-0.5, 0.5),
                                    rng.uniform(0.5, 3), 0.0]])
    return custom_euler(phi=smooth(2.0), theta=smooth(1.0) + 1.0,
                        chi=smooth(2.0), beta=smooth(1.0), rho=rho,
                        rapidity=rapidity, boost_axis=rng.standard_normal(3),
                        duration=duration)


# (name, kind, params): one example of every kind, plus the positron
BUILTIN_EXAMPLES = (
    ('rest_electron', 'rest_plane_wave', {'m': 1.0}),
    ('rest_positron', 'rest_plane_wave', {'m': 1.0, 'sign': 'positron'}),
    ('boosted_plane_wave', 'boosted_plane_wave',
     {'m': 1.0, 'b': [0.3, -0.2, 0.5]}),
    ('precession_loop', 'precession_loop',
     {'theta0': np.pi / 3, 'omega_phi': 1.0}),
    ('precession_eigencurve', 'precession_eigencurve',
     {'theta0': np.pi / 3, 'omega_phi': 1.0}),
    ('boosted_precession', 'boosted_precession',
     {'b': 1.0, 'theta0': np.pi / 3, 'omega_phi': 1.0}),
    ('beta_ramp', 'beta_ramp', {'beta_rate': 0.5}),
    ('wobbling_spinor', 'custom_euler',
     {'phi': {'poly': [0.0, 1.0]},
      'theta': {'poly': [0.8], 'trig': [[0.2, 2.0, 0.0]]},
      'chi': {'poly': [0.0, 3.0]},
      'beta': {'trig': [[0.3, 1.5, 0.0]]},
      'rapidity': 0.4,
      'boost_axis': [0.0, 1.0, 1.0]}),
)


def builtin_trajectories(steps=_settings.DEFAULT_STEPS):
    """
    Build every entry of :data:`BUILTIN_EXAMPLES`.

    Returns:
        list of ``(name, trajectory)`` pairs
    """

    return [(name, build_trajectory(validate_scenario(
        {'kind': kind, 'params': params, 'steps': steps})))
        for name, kind, params in BUILTIN_EXAMPLES]
