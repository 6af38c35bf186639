r"""
Real-coefficient arithmetic in the spacetime algebra :math:`Cl(1,3)`.

A multivector is stored as 16 doubles indexed by a 4-bit blade mask. Bit
:math:`\mu` of the mask stands for the generator :math:`\gamma_\mu` and the
generators of a blade are kept in ascending order, so mask ``0b0011`` is
:math:`\gamma_0\gamma_1` and mask ``0b1111`` is the pseudoscalar
:math:`I = \gamma_0\gamma_1\gamma_2\gamma_3`. The metric is
:math:`\mathrm{diag}(+,-,-,-)`.

The geometric product is a lookup in a precomputed 16x16 table of target
blades and signs, evaluated by a small ``numba`` kernel. The inner and outer
products reuse the same kernel with masked sign tables.

The Pauli algebra is the even subalgebra, with relative vectors
:math:`\sigma_k = \gamma_k\gamma_0`.
"""

import numbers

import numpy as np
from numba import njit

from .. import _settings
from ..errors import DomainError

METRIC = np.array([1.0, -1.0, -1.0, -1.0])
NBLADES = 16
GRADES = np.array([bin(mask).count('1') for mask in range(NBLADES)])
REVERSION_SIGN = np.array([(-1.0) ** (k * (k - 1) // 2) for k in GRADES])
EVEN_MASKS = np.flatnonzero(GRADES % 2 == 0)
ODD_MASKS = np.flatnonzero(GRADES % 2 == 1)


def blade_product(a, b):
    r"""
    Product of two basis blades.

    Args:
        a (int): Left blade mask
        b (int): Right blade mask

    Returns:
        tuple: ``(mask, sign)`` with ``blade(a) * blade(b) = sign * blade(mask)``

    Notes:
        The sign is :math:`(-1)^n` for the :math:`n` transpositions needed to
        bring the generators into ascending order, times the metric
        :math:`g_{\mu\mu}` of every generator shared by both blades.
    """

    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count('1')
        x >>= 1
    sign = -1.0 if swaps & 1 else 1.0
    common = a & b
    for mu in range(4):
        if (common >> mu) & 1:
            sign *= METRIC[mu]
    return a ^ b, sign


def structure_constants():
    """
    Tabulate :func:`blade_product` over all 256 blade pairs.

    Returns:
        ``(index, sign)``: ``(16, 16)`` int64 table of target masks and
        ``(16, 16)`` float table of signs
    """

    index = np.zeros((NBLADES, NBLADES), dtype=np.int64)
    sign = np.zeros((NBLADES, NBLADES))
    for a in range(NBLADES):
        for b in range(NBLADES):
            index[a, b], sign[a, b] = blade_product(a, b)
    return index, sign


PRODUCT_INDEX, PRODUCT_SIGN = structure_constants()

_r = GRADES[:, None]
_s = GRADES[None, :]
_g = GRADES[PRODUCT_INDEX]
INNER_SIGN = np.where((_r > 0) & (_s > 0) & (_g == np.abs(_r - _s)),
                      PRODUCT_SIGN, 0.0)
OUTER_SIGN = np.where(_g == _r + _s, PRODUCT_SIGN, 0.0)

# relative-space grade of each even blade: sigma_k = gamma_k gamma_0 carry
# bit 0, spatial bivectors do not; -1 marks odd blades
PAULI_GRADES = np.full(NBLADES, -1, dtype=np.int64)
PAULI_GRADES[0] = 0
PAULI_GRADES[NBLADES - 1] = 3
PAULI_GRADES[(GRADES == 2) & (np.arange(NBLADES) & 1 == 1)] = 1
PAULI_GRADES[(GRADES == 2) & (np.arange(NBLADES) & 1 == 0)] = 2
_pr = PAULI_GRADES[:, None]
_ps = PAULI_GRADES[None, :]
PAULI_OUTER_SIGN = np.where((_pr >= 0) & (_ps >= 0)
                            & (PAULI_GRADES[PRODUCT_INDEX] == _pr + _ps),
                            PRODUCT_SIGN, 0.0)
del _r, _s, _g, _pr, _ps


@njit(cache=False)
def _product_kernel(a, b, index, sign):
    out = np.zeros(16)
    for i in range(16):
        ai = a[i]
        if ai == 0.0:
            continue
        for j in range(16):
            bj = b[j]
            if bj != 0.0:
                out[index[i, j]] += sign[i, j] * ai * bj
    return out


@njit(cache=False)
def _batch_product_kernel(a, b, index, sign):
    n = a.shape[0]
    out = np.zeros((n, 16))
    for k in range(n):
        for i in range(16):
            ai = a[k, i]
            if ai == 0.0:
                continue
            for j in range(16):
                bj = b[k, j]
                if bj != 0.0:
                    out[k, index[i, j]] += sign[i, j] * ai * bj
    return out


class Multivector:
    r"""
    Element of :math:`Cl(1,3)` with 16 real coefficients.

    Supports ``+``, ``-``, scaling by real numbers, ``*`` (geometric
    product), ``^`` (outer product), ``|`` (inner product) and ``~``
    (reversion). Instances are treated as immutable values; the coefficient
    array is read-only.

    Args:
        value: Length-16 sequence of coefficients indexed by blade mask.
            Default is `None` (zero multivector)
    """

    __slots__ = ('value',)
    # let numpy scalars defer to __rmul__ / __radd__
    __array_ufunc__ = None

    def __init__(self, value=None):
        if value is None:
            value = np.zeros(NBLADES)
        value = np.array(value, dtype=np.float64)
        if value.shape != (NBLADES,):
            raise ValueError('expected 16 coefficients, got shape %s'
                             % (value.shape,))
        value.flags.writeable = False
        self.value = value

    @classmethod
    def blade(cls, mask, coeff=1.0):
        """Single basis blade ``coeff * e_mask``."""
        value = np.zeros(NBLADES)
        value[mask] = coeff
        return cls(value)

    @classmethod
    def scalar(cls, x):
        return cls.blade(0, x)

    @classmethod
    def vector(cls, components):
        r"""Grade-1 element :math:`a^\mu\gamma_\mu` from four components."""
        components = np.asarray(components, dtype=float)
        if components.shape != (4,):
            raise IndexError('a spacetime vector needs 4 components')
        value = np.zeros(NBLADES)
        value[[1, 2, 4, 8]] = components
        return cls(value)

    # -- coefficient access -------------------------------------------------
    def __getitem__(self, mask):
        return self.value[mask]

    @property
    def scalar_part(self):
        return float(self.value[0])

    @property
    def pseudoscalar_part(self):
        return float(self.value[15])

    def grade(self, k):
        return grade_projection(self, k)

    def norm(self):
        """Euclidean norm of the coefficient vector (not a metric norm)."""
        return float(np.sqrt(np.dot(self.value, self.value)))

    def max_abs(self):
        return float(np.max(np.abs(self.value)))

    def is_even(self, tol=None):
        if tol is None:
            tol = _settings.grade_tol()
        return bool(np.all(np.abs(self.value[ODD_MASKS]) <= tol))

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Multivector):
            return Multivector(self.value + other.value)
        if isinstance(other, numbers.Real):
            value = self.value.copy()
            value[0] += other
            return Multivector(value)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Multivector):
            return Multivector(self.value - other.value)
        if isinstance(other, numbers.Real):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Multivector(-self.value)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, numbers.Real):
            return Multivector(self.value * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return Multivector(self.value * other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return Multivector(self.value / other)
        return NotImplemented

    def __xor__(self, other):
        return outer_product(self, other)

    def __or__(self, other):
        return inner_product(self, other)

    def __invert__(self):
        return reversion(self)

    def __repr__(self):
        terms = ['%r*%s' % (float(self.value[m]), blade_label(m))
                 for m in range(NBLADES) if self.value[m] != 0.0]
        return 'Multivector(%s)' % (' + '.join(terms) if terms else '0')


def blade_label(mask):
    if mask == 0:
        return '1'
    return ''.join('γ%d' % mu for mu in range(4) if (mask >> mu) & 1)


def _as_multivector(x):
    if isinstance(x, Multivector):
        return x
    if isinstance(x, numbers.Real):
        return Multivector.scalar(x)
    raise TypeError('cannot interpret %r as a multivector' % (x,))


def geometric_product(a, b, sign_table=None):
    r"""
    Geometric (Clifford) product :math:`ab`.

    Args:
        a: Left factor (:class:`Multivector` or real)
        b: Right factor (:class:`Multivector` or real)
        sign_table: Optional ``(16, 16)`` replacement for
            :data:`PRODUCT_SIGN`, used to exercise the oracle checks with a
            deliberately corrupted algebra

    Returns:
        :class:`Multivector`
    """

    a = _as_multivector(a)
    b = _as_multivector(b)
    sign = PRODUCT_SIGN if sign_table is None else np.asarray(sign_table,
                                                              dtype=float)
    return Multivector(_product_kernel(a.value, b.value, PRODUCT_INDEX, sign))


def inner_product(a, b):
    r"""
    Inner product
    :math:`\sum_{r,s>0} \langle\langle a\rangle_r\langle b\rangle_s\rangle_{|r-s|}`.

    Scalar factors contribute nothing. For two vectors this is
    :math:`\frac{1}{2}(ab+ba)`; for two bivectors it is the scalar
    :math:`\langle ab\rangle_0`.
    """

    a = _as_multivector(a)
    b = _as_multivector(b)
    return Multivector(_product_kernel(a.value, b.value, PRODUCT_INDEX,
                                       INNER_SIGN))


def outer_product(a, b):
    r"""
    Outer product :math:`\sum_{r,s} \langle\langle a\rangle_r\langle b\rangle_s\rangle_{r+s}`.

    When both operands are even the grades are the relative-space ones of
    :func:`pauli_view`, so relative vectors wedge to relative bivectors,
    :math:`\sigma_1\wedge\sigma_2 = \sigma_1\sigma_2`, and
    :math:`\sigma_1\wedge I\sigma_1 = I`. Any odd part selects the
    spacetime grades.
    """

    a = _as_multivector(a)
    b = _as_multivector(b)
    if np.any(a.value[ODD_MASKS]) or np.any(b.value[ODD_MASKS]):
        table = OUTER_SIGN
    else:
        table = PAULI_OUTER_SIGN
    return Multivector(_product_kernel(a.value, b.value, PRODUCT_INDEX,
                                       table))


def grade_projection(c, k):
    r"""
    Grade-:math:`k` part :math:`\langle c\rangle_k`.

    Raises:
        DomainError: If `k` is not an integer in ``0..4``
    """

    if isinstance(k, bool) or not isinstance(k, numbers.Integral) \
            or not 0 <= k <= 4:
        raise DomainError('grade must be an integer in 0..4, got %r' % (k,))
    c = _as_multivector(c)
    return Multivector(np.where(GRADES == k, c.value, 0.0))


def scalar_part(c):
    r""":math:`\langle c\rangle_0` as a float."""
    return _as_multivector(c).scalar_part


def reversion(c):
    r"""Reverse :math:`\tilde{c}`: grade :math:`k` scaled by :math:`(-1)^{k(k-1)/2}`."""
    c = _as_multivector(c)
    return Multivector(c.value * REVERSION_SIGN)


def hermitian_adjoint(psi):
    r""":math:`\psi^\dagger = \gamma_0\tilde{\psi}\gamma_0`."""
    return GAMMA0 * reversion(psi) * GAMMA0


def even_part(c):
    c = _as_multivector(c)
    return Multivector(np.where(GRADES % 2 == 0, c.value, 0.0))


def require_even(c, what='multivector', error=DomainError):
    """
    Check that `c` has no odd-grade content beyond the grade tolerance.

    Raises:
        DomainError (or `error`): If an odd coefficient exceeds
            :func:`sta_phase._settings.grade_tol` relative to the size of `c`
    """

    c = _as_multivector(c)
    tol = _settings.grade_tol() * max(1.0, c.max_abs())
    if np.any(np.abs(c.value[ODD_MASKS]) > tol):
        raise error('%s must be even (grades 0, 2, 4)' % what)
    return even_part(c)


def allclose(a, b, atol=1e-10):
    return bool(np.allclose(_as_multivector(a).value,
                            _as_multivector(b).value, rtol=0.0, atol=atol))


# -- row-wise arithmetic on (n, 16) coefficient arrays -------------------------
_SCALAR_SIGN = np.diag(PRODUCT_SIGN).copy()


def as_rows(c):
    """
    Coefficient rows of a multivector, a ``(16,)`` array or an ``(n, 16)``
    array.

    Raises:
        DomainError: If the trailing dimension is not 16
    """

    if isinstance(c, Multivector):
        return c.value[None, :]
    rows = np.asarray(c, dtype=float)
    if rows.ndim == 1:
        rows = rows[None, :]
    if rows.ndim != 2 or rows.shape[1] != NBLADES:
        raise DomainError('expected (n, 16) coefficient rows, got shape %s'
                          % (rows.shape,))
    return rows


def batch_product(a, b):
    r"""
    Geometric product row by row.

    Either operand may be a single multivector, which is broadcast over the
    rows of the other.

    Returns:
        ``(n, 16)`` array

    Raises:
        DomainError: If the row counts differ and neither is 1
    """

    a = as_rows(a)
    b = as_rows(b)
    n = max(a.shape[0], b.shape[0])
    if a.shape[0] not in (1, n) or b.shape[0] not in (1, n):
        raise DomainError('cannot broadcast %d rows against %d'
                          % (a.shape[0], b.shape[0]))
    a = np.ascontiguousarray(np.broadcast_to(a, (n, NBLADES)))
    b = np.ascontiguousarray(np.broadcast_to(b, (n, NBLADES)))
    return _batch_product_kernel(a, b, PRODUCT_INDEX, PRODUCT_SIGN)


def batch_reversion(rows):
    return as_rows(rows) * REVERSION_SIGN


def batch_grade(rows, k):
    return np.where(GRADES == k, as_rows(rows), 0.0)


def batch_scalar_product(a, b):
    r""":math:`\langle ab\rangle_0` per row; only equal blades meet in grade 0."""
    return (as_rows(a) * as_rows(b) * _SCALAR_SIGN).sum(axis=1)


# -- named elements -----------------------------------------------------------
ONE = Multivector.scalar(1.0)
GAMMA0 = Multivector.blade(0b0001)
GAMMA1 = Multivector.blade(0b0010)
GAMMA2 = Multivector.blade(0b0100)
GAMMA3 = Multivector.blade(0b1000)
GAMMA = (GAMMA0, GAMMA1, GAMMA2, GAMMA3)
# reciprocal frame: gamma^0 = gamma_0, gamma^k = -gamma_k
RECIPROCAL_GAMMA = tuple(g * m for g, m in zip(GAMMA, METRIC))
I = GAMMA0 * GAMMA1 * GAMMA2 * GAMMA3
SIGMA1 = GAMMA1 * GAMMA0
SIGMA2 = GAMMA2 * GAMMA0
SIGMA3 = GAMMA3 * GAMMA0
SIGMA = (SIGMA1, SIGMA2, SIGMA3)
ISIGMA1 = I * SIGMA1
ISIGMA2 = I * SIGMA2
ISIGMA3 = I * SIGMA3
ISIGMA = (ISIGMA1, ISIGMA2, ISIGMA3)


def relative_vector(components):
    r""":math:`a_k\sigma_k` from three components."""
    x, y, z = np.asarray(components, dtype=float)
    return x * SIGMA1 + y * SIGMA2 + z * SIGMA3


class PauliView:
    r"""
    An even multivector read in the Pauli basis
    :math:`\{1, \sigma_k, I\sigma_k, I\}`.

    The underlying element is unchanged; only the labelling of its grades
    differs. In the Pauli algebra :math:`\sigma_k` are vectors,
    :math:`I\sigma_k` bivectors and :math:`I = \sigma_1\sigma_2\sigma_3` the
    trivector, so reversion flips the sign of the last two.

    Attributes:
        scalar (float): :math:`c^s`
        vector: ``(3,)`` array :math:`c^v_k`
        bivector: ``(3,)`` array :math:`c^b_k` of :math:`I\sigma_k`
        trivector (float): :math:`c^t`
    """

    LABELS = ('1', 'σ1', 'σ2', 'σ3', 'Iσ1', 'Iσ2', 'Iσ3', 'σ1σ2σ3')

    def __init__(self, scalar, vector, bivector, trivector):
        self.scalar = float(scalar)
        self.vector = np.array(vector, dtype=float)
        self.bivector = np.array(bivector, dtype=float)
        self.trivector = float(trivector)

    @property
    def coefficients(self):
        return np.concatenate(([self.scalar], self.vector, self.bivector,
                               [self.trivector]))

    def to_multivector(self):
        out = self.scalar * ONE + self.trivector * I
        for k in range(3):
            out = out + self.vector[k] * SIGMA[k] + self.bivector[k] * ISIGMA[k]
        return out

    def reversion(self):
        return PauliView(self.scalar, self.vector, -self.bivector,
                         -self.trivector)

    def __repr__(self):
        terms = ['%r*%s' % (c, lab) for c, lab in
                 zip(self.coefficients, self.LABELS) if c != 0.0]
        return 'PauliView(%s)' % (' + '.join(terms) if terms else '0')


def pauli_view(c):
    r"""
    Relabel an even multivector in the Pauli basis.

    Args:
        c: Even :class:`Multivector`

    Returns:
        :class:`PauliView`

    Raises:
        DomainError: If `c` has odd-grade content
    """

    c = require_even(c, 'pauli_view input')
    # the Pauli basis is orthogonal under <AB>_0 with squares +1 / -1
    vector = [scalar_part(c * s) for s in SIGMA]
    bivector = [-scalar_part(c * b) for b in ISIGMA]
    return PauliView(c.scalar_part, vector, bivector, -scalar_part(c * I))


def random_multivector(rng, grades=None, scale=1.0):
    """
    Multivector with standard-normal coefficients.

    Args:
        rng: :class:`numpy.random.Generator`
        grades: Iterable of grades to populate. Default is `None` (all)
        scale (float): Standard deviation of the coefficients
    """

    value = scale * rng.standard_normal(NBLADES)
    if grades is not None:
        value = np.where(np.isin(GRADES, list(grades)), value, 0.0)
    return Multivector(value)


def cayley_table(sign_table=None):
    """
    Signed multiplication table of the 16 basis blades.

    Returns:
        list of 16 lists of strings ``'+e<hex>'`` / ``'-e<hex>'``; entry
        ``[a][b]`` is the product ``blade(a) * blade(b)``
    """

    sign = PRODUCT_SIGN if sign_table is None else np.asarray(sign_table)
    return [['%se%x' % ('+' if sign[a, b] > 0 else '-', PRODUCT_INDEX[a, b])
             for b in range(NBLADES)] for a in range(NBLADES)]


def format_cayley_table(sign_table=None):
    return '\n'.join(' '.join(row) for row in cayley_table(sign_table)) + '\n'
