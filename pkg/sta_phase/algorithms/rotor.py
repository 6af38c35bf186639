r"""
Lorentz rotors: construction, exponentiation, and decomposition.

A rotor :math:`R` is an even multivector with :math:`R\tilde{R} = 1` acting
on any multivector by :math:`c \mapsto Rc\tilde{R}`. Every proper
orthochronous rotor factors as a boost times a spatial rotation,
:math:`R = LU`, and the spatial part is parametrized by Euler angles

.. math::

    U = e^{-I\sigma_3\phi/2} e^{-I\sigma_2\theta/2} e^{-I\sigma_3\chi/2}.
"""

import logging
from collections import namedtuple

import numpy as np

from .. import _settings
from ..errors import ContractViolationError, DecompositionError, DomainError
from .ga_core import (GAMMA0, GRADES, ISIGMA1, ISIGMA2, ISIGMA3, ONE,
                      Multivector, grade_projection, relative_vector,
                      require_even, scalar_part)
from .helpers import wrap_angle

logger = logging.getLogger(__name__)

EulerAngles = namedtuple('EulerAngles', ['phi', 'theta', 'chi'])
EulerAngles.__doc__ = r"""Euler angles in radians; canonical range
:math:`\theta \in [0, \pi]`, :math:`\phi, \chi \in (-\pi, \pi]`."""

BoostParams = namedtuple('BoostParams', ['b1', 'b2', 'b3'])
BoostParams.__doc__ = 'Rapidity components along sigma_1, sigma_2, sigma_3.'

# scalar + I*sigma_k: the blades a spatial rotor may use
_SPATIAL_MASKS = np.array([0b0000, 0b0110, 0b1010, 0b1100])
_NON_SPATIAL_EVEN = np.array([m for m in range(16)
                              if GRADES[m] % 2 == 0 and m not in _SPATIAL_MASKS])


class Rotor(Multivector):
    """
    Even unit multivector representing a proper orthochronous Lorentz
    transformation.

    Args:
        value: :class:`~sta_phase.algorithms.ga_core.Multivector` or 16
            coefficients
        check (bool): Validate with :func:`check_rotor`. Internal code that
            builds rotors from exponentials passes `False`

    Raises:
        ContractViolationError: If `check` and the value is not a rotor
    """

    __slots__ = ()

    def __init__(self, value, check=True):
        if isinstance(value, Multivector):
            value = value.value
        super().__init__(value)
        if check:
            check_rotor(self)


def check_rotor(R, tol=None):
    r"""
    Validate the rotor contract.

    Checks that `R` is even, that :math:`|R\tilde{R} - 1|` is within `tol`,
    and that :math:`R\gamma_0\tilde{R}` has a positive time component.

    Raises:
        ContractViolationError: On the first violated condition
    """

    if tol is None:
        tol = _settings.rotor_tol()
    R = require_even(R, 'rotor', ContractViolationError)
    drift = (R * ~R - ONE).norm()
    if drift > tol:
        raise ContractViolationError('|R rev(R) - 1| = %.3g exceeds %.3g'
                                     % (drift, tol))
    if scalar_part(R * GAMMA0 * ~R * GAMMA0) <= 0:
        raise ContractViolationError('rotor is not orthochronous')
    return R


def normalize_rotor(R):
    r""":math:`R / \sqrt{\langle R\tilde{R}\rangle_0}`."""
    norm2 = scalar_part(R * ~R)
    if norm2 <= 0:
        raise ContractViolationError('cannot normalize: <R rev(R)> = %g'
                                     % norm2)
    return Rotor(R / np.sqrt(norm2), check=False)


def compose_rotors(*rotors):
    """Product of rotors, left to right."""
    out = ONE
    for R in rotors:
        out = out * R
    return Rotor(out, check=False)


def _exp_series(B, nterms=16):
    # Taylor series with scaling and squaring, for B^2 not a pure scalar
    norm = B.norm()
    squarings = int(np.ceil(np.log2(norm / 0.5))) if norm >= 0.5 else 0
    X = B / 2.0 ** squarings
    term = ONE
    total = ONE
    for k in range(1, nterms + 1):
        term = term * X / k
        total = total + term
    for _ in range(squarings):
        total = total * total
    return total


def exp_bivector(B):
    r"""
    Exponential of a bivector.

    Args:
        B: Grade-2 :class:`~sta_phase.algorithms.ga_core.Multivector`

    Returns:
        :class:`Rotor` :math:`e^B`

    Raises:
        DomainError: If `B` has content outside grade 2

    Notes:
        When :math:`B^2 = -|B|^2` the result is :math:`\cos|B| +
        \hat{B}\sin|B|`; when :math:`B^2 = +|B|^2` it is :math:`\cosh|B| +
        \hat{B}\sinh|B|`; a null :math:`B` gives :math:`1 + B`. Bivectors
        whose square has a pseudoscalar part fall back to a 16-term power
        series with scaling and squaring.
    """

    if not isinstance(B, Multivector):
        raise DomainError('exp_bivector needs a Multivector, got %r' % (B,))
    tol = _settings.grade_tol() * max(1.0, B.max_abs())
    if np.any(np.abs(B.value[GRADES != 2]) > tol):
        raise DomainError('exp_bivector input must be a pure bivector')
    B = grade_projection(B, 2)
    B2 = B * B
    alpha, beta = B2.scalar_part, B2.pseudoscalar_part
    if abs(beta) > _settings.grade_tol() * max(1.0, abs(alpha)):
        return Rotor(_exp_series(B), check=False)
    if alpha <= 0:
        n = np.sqrt(-alpha)
        c, sinc = np.cos(n), np.sinc(n / np.pi)
    else:
        n = np.sqrt(alpha)
        c = np.cosh(n)
        sinc = np.sinh(n) / n if n > 1e-8 else 1.0 + n * n / 6.0
    return Rotor(c * ONE + sinc * B, check=False)


def _plane_rotor(unit_bivector, angle):
    # exp(-B angle/2) for B^2 = -1
    return Rotor(np.cos(angle / 2) * ONE - np.sin(angle / 2) * unit_bivector,
                 check=False)


def euler_rotor(angles):
    r"""
    Spatial rotor :math:`e^{-I\sigma_3\phi/2} e^{-I\sigma_2\theta/2}
    e^{-I\sigma_3\chi/2}`.

    Args:
        angles: :data:`EulerAngles` or any ``(phi, theta, chi)`` sequence

    Returns:
        :class:`Rotor` fixing :math:`\gamma_0`
    """

    phi, theta, chi = angles
    return compose_rotors(_plane_rotor(ISIGMA3, phi),
                          _plane_rotor(ISIGMA2, theta),
                          _plane_rotor(ISIGMA3, chi))


def boost_rotor(b):
    r"""
    Pure boost :math:`L = e^{-(b_1\sigma_1 + b_2\sigma_2 + b_3\sigma_3)/2}`.

    Args:
        b: :data:`BoostParams` or any 3-sequence of rapidities
    """

    b = np.asarray(tuple(b), dtype=float)
    if b.shape != (3,) or not np.all(np.isfinite(b)):
        raise DomainError('boost needs 3 finite rapidities, got %r' % (b,))
    return exp_bivector(relative_vector(-0.5 * b))


def rotate(c, R):
    r"""
    Conjugate `c` by a rotor, :math:`Rc\tilde{R}`.

    Raises:
        ContractViolationError: If `R` fails :func:`check_rotor`
    """

    check_rotor(R)
    return R * c * ~R


def split_boost_rotation(R):
    r"""
    Factor a rotor as :math:`R = LU` with :math:`L` a pure boost and
    :math:`U` a spatial rotation.

    Args:
        R: Orthochronous :class:`Rotor`

    Returns:
        ``(L, U)`` pair of :class:`Rotor`

    Raises:
        DecompositionError: If :math:`v\cdot\gamma_0 \le -1 + \epsilon`, with
            :math:`v = R\gamma_0\tilde{R}`

    Notes:
        :math:`L = (1 + v\gamma_0) / \sqrt{2(1 + v\cdot\gamma_0)}` is the
        square root of :math:`v\gamma_0`, hence :math:`L\gamma_0\tilde{L} =
        v`, and :math:`U = \tilde{L}R` fixes :math:`\gamma_0`.
    """

    R = require_even(R, 'split_boost_rotation input', DecompositionError)
    vg0 = R * GAMMA0 * ~R * GAMMA0
    v0 = vg0.scalar_part
    if v0 <= -1.0 + _settings.rotor_tol():
        raise DecompositionError('v.gamma0 = %g: rotor is not orthochronous'
                                 % v0)
    relative = grade_projection(vg0, 2)
    L = Rotor((ONE + v0 + relative) / np.sqrt(2.0 * (1.0 + v0)), check=False)
    U = Rotor(~L * R, check=False)
    return L, U


def _spatial_components(U):
    # U = w - x I sigma_1 - y I sigma_2 - z I sigma_3
    return (scalar_part(U), scalar_part(U * ISIGMA1),
            scalar_part(U * ISIGMA2), scalar_part(U * ISIGMA3))


def euler_from_spatial(U, return_sign=False):
    r"""
    Euler angles of a spatial rotor.

    Args:
        U: Spatial :class:`Rotor` (fixes :math:`\gamma_0`)
        return_sign (bool): Also return the sign :math:`s = \pm 1` with
            ``euler_rotor(angles) == s * U``

    Returns:
        :data:`EulerAngles`, or ``(EulerAngles, sign)``

    Raises:
        DomainError: If `U` has boost or pseudoscalar content

    Notes:
        The double cover is resolved by taking the representative with
        non-negative scalar part; when the scalar part is within
        :func:`~sta_phase._settings.sign_tol` of zero, the one with
        non-negative :math:`\langle -I\sigma_3 U\rangle_0`. At gimbal lock
        (:math:`|\sin\theta|` below :func:`~sta_phase._settings.gimbal_tol`)
        :math:`\phi` is set to 0 and the azimuth is carried by :math:`\chi`.
    """

    U = require_even(U, 'euler_from_spatial input')
    tol = _settings.grade_tol() * max(1.0, U.max_abs())
    if np.any(np.abs(U.value[_NON_SPATIAL_EVEN]) > tol):
        raise DomainError('euler_from_spatial needs a rotor that fixes gamma0')

    w, x, y, z = _spatial_components(U)
    if w < -_settings.sign_tol() or (abs(w) <= _settings.sign_tol() and z > 0):
        w, x, y, z = -w, -x, -y, -z

    half_theta = np.arctan2(np.hypot(x, y), np.hypot(w, z))
    half_sum = np.arctan2(z, w)
    half_diff = np.arctan2(x, y)
    if abs(np.sin(2 * half_theta)) < _settings.gimbal_tol():
        logger.debug('gimbal lock at theta = %.3g; folding azimuth into chi',
                     2 * half_theta)
        phi = 0.0
        chi = 2 * half_sum if half_theta < np.pi / 4 else 2 * half_diff
    else:
        phi = half_sum - half_diff
        chi = half_sum + half_diff
    angles = EulerAngles(wrap_angle(phi), float(2 * half_theta),
                         wrap_angle(chi))
    if not return_sign:
        return angles
    sign = 1.0 if scalar_part(euler_rotor(angles) * ~U) >= 0 else -1.0
    return angles, sign


def random_rotor(rng, max_rapidity=3.0):
    """
    Random proper orthochronous rotor ``boost * euler``.

    Args:
        rng: :class:`numpy.random.Generator`
        max_rapidity (float): Upper bound on the boost rapidity
    """

    direction = rng.standard_normal(3)
    direction /= np.linalg.norm(direction)
    b = rng.uniform(0, max_rapidity) * direction
    angles = (rng.uniform(-np.pi, np.pi), rng.uniform(0, np.pi),
              rng.uniform(-np.pi, np.pi))
    return compose_rotors(boost_rotor(b), euler_rotor(angles))
