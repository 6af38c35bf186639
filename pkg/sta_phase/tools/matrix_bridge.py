r"""
Independent oracle in the Dirac-Pauli matrix representation.

Each basis blade maps to the ordered product of :math:`4\times4` matrices
:math:`\hat{\gamma}_\mu` of its generators, which gives a faithful matrix
image of the whole algebra. A spinor :math:`\psi` maps to the column vector
:math:`\Psi = \hat{\psi}\,e_1`; this is the real-linear bijection fixed by

* :math:`i\Psi \leftrightarrow \psi I\sigma_3`
* :math:`\hat{\gamma}_5\Psi \leftrightarrow \psi\sigma_3`
* :math:`i\hat{\gamma}_5\Psi \leftrightarrow I\psi`
* :math:`\hat{\gamma}_\mu\Psi \leftrightarrow \gamma_\mu\psi\gamma_0`

with :math:`\psi = 1 \mapsto (1, 0, 0, 0)^T`. These contracts hold together
only for :math:`\hat{\gamma}_5 = -i\hat{\gamma}_0\hat{\gamma}_1\hat{\gamma}_2
\hat{\gamma}_3`, which still squares to one and anticommutes with every
:math:`\hat{\gamma}_\mu`.
"""

import numpy as np
from scipy.linalg import expm

from .. import _settings
from ..algorithms.ga_core import (EVEN_MASKS, GAMMA0, I, ISIGMA3, NBLADES,
                                  PRODUCT_INDEX, PRODUCT_SIGN,
                                  RECIPROCAL_GAMMA, Multivector, require_even,
                                  scalar_part)
from ..algorithms.spinor import Spinor
from ..errors import ContractViolationError, DegenerateSpinorError

IDENTITY4 = np.eye(4, dtype=complex)
_PAULI = np.array([[[0, 1], [1, 0]],
                   [[0, -1j], [1j, 0]],
                   [[1, 0], [0, -1]]], dtype=complex)


def dirac_pauli_gammas():
    r"""
    Standard :math:`\hat{\gamma}_\mu` matrices.

    Returns:
        ``(4, 4, 4)`` complex array, :math:`\hat{\gamma}_0 =
        \mathrm{diag}(1, 1, -1, -1)` and :math:`\hat{\gamma}_k =
        [[0, \sigma_k], [-\sigma_k, 0]]`
    """

    gammas = np.zeros((4, 4, 4), dtype=complex)
    gammas[0] = np.diag([1, 1, -1, -1])
    zero = np.zeros((2, 2))
    for k in range(3):
        gammas[k + 1] = np.block([[zero, _PAULI[k]], [-_PAULI[k], zero]])
    return gammas


GAMMA_HAT = dirac_pauli_gammas()
GAMMA5_HAT = -1j * GAMMA_HAT[0] @ GAMMA_HAT[1] @ GAMMA_HAT[2] @ GAMMA_HAT[3]


def blade_matrices(gammas=GAMMA_HAT):
    """Matrix image of every basis blade, as a ``(16, 4, 4)`` array."""
    out = np.zeros((NBLADES, 4, 4), dtype=complex)
    for mask in range(NBLADES):
        m = IDENTITY4.copy()
        for mu in range(4):
            if (mask >> mu) & 1:
                m = m @ gammas[mu]
        out[mask] = m
    return out


BLADE_MATRICES = blade_matrices()


def matrix_image(c):
    """4x4 complex matrix representing a multivector."""
    return np.tensordot(c.value, BLADE_MATRICES, axes=1)


def _spinor_map():
    # column j: real and imaginary parts of blade_j e_1, interleaved
    columns = BLADE_MATRICES[EVEN_MASKS][:, :, 0]
    real = np.empty((8, EVEN_MASKS.size))
    real[0::2] = columns.real.T
    real[1::2] = columns.imag.T
    if abs(np.linalg.det(real)) < 1e-12:
        raise RuntimeError('spinor map is singular')
    return real, np.linalg.inv(real)


_SPINOR_MAP, _SPINOR_MAP_INV = _spinor_map()


def to_matrix_spinor(psi):
    r"""
    Column spinor :math:`\Psi` of an STA spinor.

    Returns:
        ``(4,)`` complex array
    """

    psi = require_even(psi, 'spinor')
    real = _SPINOR_MAP @ psi.value[EVEN_MASKS]
    return real[0::2] + 1j * real[1::2]


def from_matrix_spinor(Psi):
    """STA spinor of a ``(4,)`` complex column spinor."""
    Psi = np.asarray(Psi, dtype=complex)
    if Psi.shape != (4,):
        raise IndexError('a Dirac spinor has 4 components')
    real = np.empty(8)
    real[0::2] = Psi.real
    real[1::2] = Psi.imag
    value = np.zeros(NBLADES)
    value[EVEN_MASKS] = _SPINOR_MAP_INV @ real
    return Spinor(value)


def dirac_adjoint(Psi):
    r""":math:`\bar{\Psi} = \Psi^\dagger\hat{\gamma}_0` as a row vector."""
    return np.conj(Psi) @ GAMMA_HAT[0]


def amplitude_hermitian(psi, phi):
    r"""
    :math:`\Psi^\dagger\Phi` computed in the STA.

    Returns:
        ``(re, im)`` with :math:`\mathrm{re} = \langle\phi\gamma_0
        \tilde{\psi}\gamma_0\rangle_0` and :math:`\mathrm{im} =
        -\langle\phi I\sigma_3\gamma_0\tilde{\psi}\gamma_0\rangle_0`
    """

    adj = GAMMA0 * ~psi * GAMMA0
    return scalar_part(phi * adj), -scalar_part(phi * ISIGMA3 * adj)


def amplitude_dirac(psi, phi):
    r"""
    :math:`\bar{\Psi}\Phi` computed in the STA.

    Returns:
        ``(re, im)`` with :math:`\mathrm{re} = \langle\phi\tilde{\psi}\rangle_0`
        and :math:`\mathrm{im} = -\langle\phi I\sigma_3\tilde{\psi}\rangle_0`
    """

    rev = ~psi
    return scalar_part(phi * rev), -scalar_part(phi * ISIGMA3 * rev)


def matrix_amplitude_hermitian(Psi, Phi):
    z = np.vdot(Psi, Phi)
    return float(z.real), float(z.imag)


def matrix_amplitude_dirac(Psi, Phi):
    z = dirac_adjoint(Psi) @ Phi
    return float(z.real), float(z.imag)


def chiral_transform(Psi, beta):
    r""":math:`e^{i\hat{\gamma}_5\beta/2}\Psi`."""
    return expm(0.5j * beta * GAMMA5_HAT) @ np.asarray(Psi, dtype=complex)


def matrix_chiral_invariants(Psi):
    r"""
    :math:`(\rho, \beta)` from :math:`\bar{\Psi}\Psi = \rho\cos\beta` and
    :math:`\bar{\Psi}i\hat{\gamma}_5\Psi = -\rho\sin\beta`.
    """

    bar = dirac_adjoint(Psi)
    a = (bar @ Psi).real
    b = (bar @ (1j * GAMMA5_HAT @ Psi)).real
    return float(np.hypot(a, b)), float(np.arctan2(-b, a))


def extract_matrix_rotor(Psi):
    r"""
    Matrix rotor :math:`\mathbf{R} = e^{-i\hat{\gamma}_5\beta/2}\Psi/\sqrt{\rho}`.

    Raises:
        DegenerateSpinorError: If :math:`\rho \le \epsilon_\rho`
    """

    rho, beta = matrix_chiral_invariants(Psi)
    if rho <= _settings.degenerate_rho():
        raise DegenerateSpinorError('spinor density rho = %.3g is degenerate'
                                    % rho)
    return chiral_transform(Psi, -beta) / np.sqrt(rho)


def matrix_phase_rate(Rm, Rm_dot):
    r"""
    :math:`\mathrm{Im}(\bar{\mathbf{R}}\dot{\mathbf{R}})` for a unit matrix
    rotor.

    Raises:
        ContractViolationError: If :math:`|\bar{\mathbf{R}}\mathbf{R} - 1|`
            exceeds 1e-8
    """

    bar = dirac_adjoint(Rm)
    drift = abs(bar @ Rm - 1.0)
    if drift > 1e-8:
        raise ContractViolationError('matrix rotor normalization drift %.3g'
                                     % drift)
    return float((bar @ np.asarray(Rm_dot, dtype=complex)).imag)


def standard_dynamic_rate(psi, psi_dot):
    r""":math:`\mathrm{Im}(\Psi^\dagger\dot{\Psi})/\Psi^\dagger\Psi` via the matrix image."""
    Psi = to_matrix_spinor(psi)
    return float(np.vdot(Psi, to_matrix_spinor(psi_dot)).imag
                 / np.vdot(Psi, Psi).real)


def dirac_residual(psi_field, A, e, m, x):
    r"""
    Residual of the Dirac equation :math:`\nabla\psi I\sigma_3 - eA\psi -
    m\psi\gamma_0` at one spacetime point.

    Args:
        psi_field: Closed-form field with ``__call__(x)`` and
            ``gradient(x)`` returning the four :math:`\partial_\mu\psi`
        A: Vector potential, a grade-1 multivector, a callable of `x`, or
            `None` for zero
        e (float): Charge
        m (float): Mass
        x: Spacetime point ``(t, x, y, z)``

    Returns:
        :class:`~sta_phase.algorithms.ga_core.Multivector`
    """

    psi = psi_field(x)
    grads = psi_field.gradient(x)
    box = Multivector()
    for g_up, d_psi in zip(RECIPROCAL_GAMMA, grads):
        box = box + g_up * d_psi
    out = box * ISIGMA3 - m * (psi * GAMMA0)
    if A is not None:
        A = A(x) if callable(A) else A
        out = out - e * (A * psi)
    return out


def structure_constant_mismatch(sign_table=None):
    """
    Largest deviation between the blade products and their matrix images.

    Args:
        sign_table: Optional ``(16, 16)`` sign table to test in place of
            :data:`~sta_phase.algorithms.ga_core.PRODUCT_SIGN`

    Returns:
        float: max over all 256 pairs of ``|M_a M_b - sign * M_{a^b}|``
    """

    sign = PRODUCT_SIGN if sign_table is None else np.asarray(sign_table)
    worst = 0.0
    for a in range(NBLADES):
        for b in range(NBLADES):
            lhs = BLADE_MATRICES[a] @ BLADE_MATRICES[b]
            rhs = sign[a, b] * BLADE_MATRICES[PRODUCT_INDEX[a, b]]
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


PSEUDOSCALAR_MATRIX = matrix_image(I)
