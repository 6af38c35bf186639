r"""
Dirac spinors in polar form and the observables built from them.

An even multivector :math:`\psi` with :math:`\rho \neq 0` factors as

.. math::

    \psi = (\rho e^{I\beta})^{1/2} R,

with density :math:`\rho`, chiral angle :math:`\beta` and rotor :math:`R`.
The rotor carries the proper velocity :math:`v = R\gamma_0\tilde{R}`, the spin
vector :math:`s = \frac{1}{2}R\gamma_3\tilde{R}` and the spin bivector
:math:`S = \frac{1}{2}RI\sigma_3\tilde{R}`.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .. import _settings
from ..errors import (ContractViolationError, DegenerateSpinorError,
                      NotDiracSpinorError)
from .ga_core import (GAMMA0, GAMMA3, GRADES, I, ISIGMA3, ODD_MASKS, ONE,
                      Multivector, as_rows, batch_grade, batch_product,
                      batch_reversion, batch_scalar_product,
                      grade_projection, require_even, scalar_part)
from .helpers import central_difference, derivative_of, first_failure
from .rotor import (Rotor, euler_from_spatial, euler_rotor, normalize_rotor,
                    split_boost_rotation)

logger = logging.getLogger(__name__)


class Spinor(Multivector):
    """
    Even multivector used as a Dirac wavefunction value.

    Raises:
        NotDiracSpinorError: If the value has odd-grade content
    """

    __slots__ = ()

    def __init__(self, value):
        if not isinstance(value, Multivector):
            value = Multivector(value)
        value = require_even(value, 'spinor', NotDiracSpinorError)
        super().__init__(value.value)


@dataclass(frozen=True)
class SpinorPolar:
    """Polar factors ``(rho, beta, R)`` of a spinor."""

    rho: float
    beta: float
    R: Rotor

    def compose(self):
        return compose(self)


def _chiral_factor(beta):
    # exp(I beta / 2)
    return np.cos(beta / 2) * ONE + np.sin(beta / 2) * I


def polar_decompose(psi):
    r"""
    Factor :math:`\psi = (\rho e^{I\beta})^{1/2}R`.

    Args:
        psi: Even :class:`~sta_phase.algorithms.ga_core.Multivector`

    Returns:
        :class:`SpinorPolar` with :math:`\beta \in (-\pi, \pi]`

    Raises:
        NotDiracSpinorError: If `psi` is not even, or :math:`\psi\tilde{\psi}`
            has a bivector part
        DegenerateSpinorError: If :math:`\rho \le \epsilon_\rho`
    """

    psi = require_even(psi, 'spinor', NotDiracSpinorError)
    M = psi * ~psi
    rho = float(np.hypot(M.scalar_part, M.pseudoscalar_part))
    if rho <= _settings.degenerate_rho():
        raise DegenerateSpinorError('spinor density rho = %.3g is below %.3g'
                                    % (rho, _settings.degenerate_rho()))
    if grade_projection(M, 2).max_abs() > _settings.grade_tol() * max(1.0, rho):
        raise NotDiracSpinorError('psi rev(psi) has a bivector part')
    beta = float(np.arctan2(M.pseudoscalar_part, M.scalar_part))
    if beta <= -np.pi:
        beta = np.pi
    R = _chiral_factor(-beta) * psi / np.sqrt(rho)
    return SpinorPolar(rho, beta, Rotor(R, check=False))


def compose(p):
    r"""
    Rebuild :math:`\psi = \rho^{1/2}e^{I\beta/2}R` from polar factors.

    Raises:
        ValueError: If ``p.rho`` is negative
    """

    if p.rho < 0:
        raise ValueError('rho must be non-negative, got %g' % p.rho)
    return Spinor(np.sqrt(p.rho) * _chiral_factor(p.beta) * p.R)


def polar_rates(psi, psi_dot, polar=None):
    r"""
    Time derivatives of the polar factors along a spinor curve.

    From :math:`\psi\tilde{\psi} = \rho e^{I\beta}`,
    :math:`\dot{\rho} + I\rho\dot{\beta} =
    2\langle\dot{\psi}\tilde{\psi}\rangle_{0,4}e^{-I\beta}`, and differentiating
    :math:`R = e^{-I\beta/2}\psi/\sqrt{\rho}` gives :math:`\dot{R}`.

    Returns:
        ``(rho_dot, beta_dot, R_dot)``
    """

    if polar is None:
        polar = polar_decompose(psi)
    rho, beta = polar.rho, polar.beta
    P = psi_dot * ~psi
    z = 2.0 * complex(P.scalar_part, P.pseudoscalar_part) * np.exp(-1j * beta)
    rho_dot, beta_dot = z.real, z.imag / rho
    inner = psi_dot - (0.5 * beta_dot) * (I * psi) - (0.5 * rho_dot / rho) * psi
    R_dot = _chiral_factor(-beta) * inner / np.sqrt(rho)
    return rho_dot, beta_dot, R_dot


def velocity(R):
    r"""Proper velocity :math:`v = R\gamma_0\tilde{R}`."""
    return grade_projection(R * GAMMA0 * ~R, 1)


def spin_vector(R):
    r"""Spin vector :math:`s = \frac{1}{2}R\gamma_3\tilde{R}`."""
    return grade_projection(0.5 * (R * GAMMA3 * ~R), 1)


def spin_bivector(R):
    r"""Spin bivector :math:`S = \frac{1}{2}RI\sigma_3\tilde{R} = Isv`."""
    return grade_projection(0.5 * (R * ISIGMA3 * ~R), 2)


def frame_split(a):
    r"""
    Split a vector in the :math:`\gamma_0` frame, :math:`a\gamma_0 = a^0 +
    \mathbf{a}`.

    Returns:
        ``(a0, a_relative)``: time component and relative vector (an STA
        bivector in the :math:`\sigma_k` basis)
    """

    ag0 = a * GAMMA0
    return ag0.scalar_part, grade_projection(ag0, 2)


def _curve_value_and_rate(curve, t, h=None):
    if hasattr(curve, 'derivative'):
        return curve(t), curve.derivative(t)
    return curve(t), central_difference(curve, t, h)


def angular_velocity(R_curve, t, h=None):
    r"""
    Angular velocity bivector :math:`\Omega = 2\dot{R}\tilde{R}`.

    Args:
        R_curve: Callable ``t -> Rotor``, optionally with an exact
            ``derivative(t)`` method
        t (float): Sample time
        h (float): Finite-difference step used when no exact derivative
            exists

    Raises:
        NumericalDerivativeError: If the finite difference is not finite
    """

    R, R_dot = _curve_value_and_rate(R_curve, t, h)
    return 2.0 * (R_dot * ~R)


def spin_rate(R, R_dot):
    r""":math:`\dot{S} = \frac{1}{2}(\dot{R}I\sigma_3\tilde{R} + RI\sigma_3\dot{\tilde{R}})`."""
    return grade_projection(0.5 * (R_dot * ISIGMA3 * ~R + R * ISIGMA3 * ~R_dot),
                            2)


@dataclass(frozen=True)
class Kinematics:
    r"""
    Observables of a spinor trajectory at one time.

    ``omega0_full`` is :math:`\Omega_0 = 2\dot{R}\tilde{R}` and
    ``omega0_path`` is :math:`\omega_0 = 2\dot{R}_0\tilde{R}_0`, where
    :math:`R = R_0e^{-I\sigma_3\chi/2}`. ``chi_dot`` follows from
    :math:`\Omega_0\cdot S = \omega_0\cdot S + \dot{\chi}/2`.
    """

    t: float
    psi: Multivector
    psi_dot: Multivector
    rho: float
    beta: float
    rho_dot: float
    beta_dot: float
    R: Rotor
    R_dot: Multivector
    R0: Rotor
    R0_dot: Multivector
    v: Multivector
    s: Multivector
    S: Multivector
    S_dot: Multivector
    varrho: float
    v0: float
    s0: float
    v_spatial: Multivector
    s_spatial: Multivector
    omega0_full: Multivector
    omega0_path: Multivector
    chi_dot: float


def _euler_path_rotor(curve, t):
    # R0 = L U0 with U0 the Euler rotor at chi = 0
    R = polar_decompose(curve(t)).R
    L, U = split_boost_rotation(R)
    phi, theta, _ = euler_from_spatial(U)
    return L * euler_rotor((phi, theta, 0.0))


def numeric_path_rotor(curve, t, h=None):
    r"""
    Path rotor :math:`R_0` and its derivative for a curve without an exact
    factorization.

    Each stencil point is decomposed as :math:`R = LU_0e^{-I\sigma_3\chi/2}`
    through :func:`~sta_phase.algorithms.rotor.split_boost_rotation` and
    :func:`~sta_phase.algorithms.rotor.euler_from_spatial`; the neighbours are
    sign-aligned with the centre before differencing. Results inherit the
    gimbal-lock convention of the Euler extraction near
    :math:`\theta \in \{0, \pi\}`.
    """

    if h is None:
        h = _settings.fd_step()
    centre = _euler_path_rotor(curve, t)
    stencil = []
    for s in (t + h, t - h):
        R0 = _euler_path_rotor(curve, s)
        if scalar_part(R0 * ~centre) < 0:
            logger.debug('flipping rotor sign at t = %g', s)
            R0 = -R0
        stencil.append(R0)
    return Rotor(centre, check=False), (stencil[0] - stencil[1]) / (2.0 * h)


def kinematics_at(psi_curve, t, h=None):
    r"""
    Assemble :class:`Kinematics` for a spinor curve.

    Args:
        psi_curve: Callable ``t -> spinor``. If it has ``derivative(t)`` the
            exact :math:`\dot{\psi}` is used, and if it has ``path_rotor(t)``
            returning ``(R0, R0_dot)`` the exact path rotor is used; otherwise
            both come from central differences
        t (float): Sample time
        h (float): Finite-difference step. Default is `None` (use
            :func:`sta_phase._settings.fd_step`)

    Raises:
        DecompositionError: If the spinor cannot be decomposed at `t`
    """

    psi = psi_curve(t)
    psi_dot = derivative_of(psi_curve, t, h)
    polar = polar_decompose(psi)
    rho_dot, beta_dot, R_dot = polar_rates(psi, psi_dot, polar)
    R = normalize_rotor(polar.R)

    path_rotor = getattr(psi_curve, 'path_rotor', None)
    if path_rotor is not None:
        R0, R0_dot = path_rotor(t)
    else:
        R0, R0_dot = numeric_path_rotor(psi_curve, t, h)

    v = velocity(R)
    s = spin_vector(R)
    S = spin_bivector(R)
    v0, v_spatial = frame_split(v)
    s0, s_spatial = frame_split(s)
    omega_full = 2.0 * (R_dot * ~R)
    omega_path = grade_projection(2.0 * (R0_dot * ~R0), 2)
    chi_dot = 2.0 * (scalar_part(omega_full * S) - scalar_part(omega_path * S))
    return Kinematics(t=float(t), psi=psi, psi_dot=psi_dot, rho=polar.rho,
                      beta=polar.beta, rho_dot=rho_dot, beta_dot=beta_dot,
                      R=R, R_dot=R_dot, R0=R0, R0_dot=R0_dot, v=v, s=s, S=S,
                      S_dot=spin_rate(R, R_dot), varrho=polar.rho * v0, v0=v0,
                      s0=s0, v_spatial=v_spatial, s_spatial=s_spatial,
                      omega0_full=omega_full, omega0_path=omega_path,
                      chi_dot=chi_dot)


@dataclass(frozen=True)
class KinematicsTable:
    r"""
    :class:`Kinematics` fields on a grid of times, one row per time.

    Scalar fields are ``(n,)`` arrays and multivector fields ``(n, 16)``
    coefficient arrays. ``failure`` is ``(row, exception)`` for the earliest
    row that could not be decomposed, or `None`; rows from there on may hold
    NaN.
    """

    t: np.ndarray
    rho: np.ndarray
    beta: np.ndarray
    rho_dot: np.ndarray
    beta_dot: np.ndarray
    R: np.ndarray
    R_dot: np.ndarray
    S: np.ndarray
    S_dot: np.ndarray
    varrho: np.ndarray
    v0: np.ndarray
    v_spatial: np.ndarray
    s_spatial: np.ndarray
    omega0_full: np.ndarray
    omega0_path: np.ndarray
    chi_dot: np.ndarray
    failure: tuple = None


def _chiral_rows(beta):
    return np.outer(np.cos(beta / 2), ONE.value) \
        + np.outer(np.sin(beta / 2), I.value)


def kinematics_table(batch):
    r"""
    Vectorized :func:`kinematics_at` for a whole time grid.

    Args:
        batch: Object with ``t``, ``psi``, ``psi_dot``, ``R0`` and ``R0_dot``
            rows, such as the result of
            :meth:`~sta_phase.tools.scenarios.SpinorTrajectory.evaluate`

    Returns:
        :class:`KinematicsTable`. Rows are checked in the order
        :func:`polar_decompose` and
        :func:`~sta_phase.algorithms.rotor.normalize_rotor` check them, and
        the first failure is recorded instead of raised
    """

    t = np.asarray(batch.t, dtype=float)
    psi = as_rows(batch.psi)
    psi_dot = as_rows(batch.psi_dot)
    eps = _settings.degenerate_rho()
    grade_tol = _settings.grade_tol()

    with np.errstate(all='ignore'):
        odd = np.abs(psi[:, ODD_MASKS]).max(axis=1) \
            > grade_tol * np.maximum(1.0, np.abs(psi).max(axis=1))
        psi = np.where(GRADES % 2 == 0, psi, 0.0)
        M = batch_product(psi, batch_reversion(psi))
        rho = np.hypot(M[:, 0], M[:, 15])
        bivector = np.abs(M[:, GRADES == 2]).max(axis=1) \
            > grade_tol * np.maximum(1.0, rho)
        beta = np.arctan2(M[:, 15], M[:, 0])
        beta[beta <= -np.pi] = np.pi
        root = np.sqrt(rho)[:, None]
        unchiral = _chiral_rows(-beta)
        R = batch_product(unchiral, psi) / root

        P = batch_product(psi_dot, batch_reversion(psi))
        z = 2.0 * (P[:, 0] + 1j * P[:, 15]) * np.exp(-1j * beta)
        rho_dot, beta_dot = z.real, z.imag / rho
        inner = psi_dot - (0.5 * beta_dot)[:, None] * batch_product(I, psi) \
            - (0.5 * rho_dot / rho)[:, None] * psi
        R_dot = batch_product(unchiral, inner) / root

        norm2 = batch_scalar_product(R, batch_reversion(R))
        R = R / np.sqrt(norm2)[:, None]

        R_rev = batch_reversion(R)
        v = batch_grade(batch_product(batch_product(R, GAMMA0), R_rev), 1)
        s = batch_grade(0.5 * batch_product(batch_product(R, GAMMA3), R_rev),
                        1)
        S = batch_grade(0.5 * batch_product(batch_product(R, ISIGMA3), R_rev),
                        2)
        vg0 = batch_product(v, GAMMA0)
        sg0 = batch_product(s, GAMMA0)
        v0 = vg0[:, 0]
        omega_full = 2.0 * batch_product(R_dot, R_rev)
        R0 = as_rows(batch.R0)
        omega_path = batch_grade(
            2.0 * batch_product(as_rows(batch.R0_dot), batch_reversion(R0)), 2)
        chi_dot = 2.0 * (batch_scalar_product(omega_full, S)
                         - batch_scalar_product(omega_path, S))
        S_dot = batch_grade(
            0.5 * (batch_product(batch_product(R_dot, ISIGMA3), R_rev)
                   + batch_product(batch_product(R, ISIGMA3),
                                   batch_reversion(R_dot))), 2)

    failure = first_failure([
        (odd, lambda i: NotDiracSpinorError(
            'spinor must be even (grades 0, 2, 4)')),
        (~(rho > eps), lambda i: DegenerateSpinorError(
            'spinor density rho = %.3g is below %.3g' % (rho[i], eps))),
        (bivector, lambda i: NotDiracSpinorError(
            'psi rev(psi) has a bivector part')),
        (~(norm2 > 0), lambda i: ContractViolationError(
            'cannot normalize: <R rev(R)> = %g' % norm2[i])),
    ])
    if failure is not None:
        logger.debug('kinematics table fails at row %d of %d', failure[0],
                     t.size)
    return KinematicsTable(t=t, rho=rho, beta=beta, rho_dot=rho_dot,
                           beta_dot=beta_dot, R=R, R_dot=R_dot, S=S,
                           S_dot=S_dot, varrho=rho * v0, v0=v0,
                           v_spatial=batch_grade(vg0, 2),
                           s_spatial=batch_grade(sg0, 2),
                           omega0_full=omega_full, omega0_path=omega_path,
                           chi_dot=chi_dot, failure=failure)
