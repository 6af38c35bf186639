import numpy as np
from scipy.integrate import cumulative_trapezoid

from .. import _settings
from ..errors import NumericalDerivativeError, RangeError


class Curve:
    r"""
    Multivector-valued function of one real parameter.

    Args:
        func: Callable ``t -> Multivector``
        derivative: Optional callable ``t -> Multivector`` giving the exact
            derivative. Default is `None` (use :func:`central_difference`)
        domain (tuple): Closed interval ``(t0, t1)`` on which `func` may be
            evaluated. Default is the whole real line
    """

    def __init__(self, func, derivative=None, domain=(-np.inf, np.inf)):
        self._func = func
        self._derivative = derivative
        self.domain = (float(domain[0]), float(domain[1]))
        if self.domain[0] > self.domain[1]:
            raise ValueError('empty curve domain %s' % (self.domain,))

    def __call__(self, t):
        if not self.domain[0] <= t <= self.domain[1]:
            raise RangeError('t = %g outside curve domain [%g, %g]'
                             % (t, self.domain[0], self.domain[1]))
        return self._func(t)

    def derivative(self, t, h=None):
        if self._derivative is not None:
            return self._derivative(t)
        return central_difference(self, t, h)


def central_difference(curve, t, h=None):
    r"""
    Central difference :math:`(f(t+h) - f(t-h)) / 2h`.

    Args:
        curve: Callable returning a :class:`~sta_phase.algorithms.ga_core.Multivector`
            (or anything supporting ``-`` and division by a float). If it has a
            ``domain`` attribute, both stencil points must lie inside it
        t (float): Evaluation point
        h (float): Half step. Default is `None` (use
            :func:`sta_phase._settings.fd_step`)

    Returns:
        Derivative estimate, accurate to :math:`O(h^2)`

    Raises:
        ValueError: If `h` is not positive
        RangeError: If the stencil leaves the curve domain
        NumericalDerivativeError: If the difference is not finite
    """

    if h is None:
        h = _settings.fd_step()
    if not h > 0:
        raise ValueError('finite-difference step must be positive, got %r' % h)
    domain = getattr(curve, 'domain', None)
    if domain is not None and (t - h < domain[0] or t + h > domain[1]):
        raise RangeError('stencil [%g, %g] leaves curve domain [%g, %g]'
                         % (t - h, t + h, domain[0], domain[1]))
    diff = (curve(t + h) - curve(t - h)) / (2.0 * h)
    values = getattr(diff, 'value', diff)
    if not np.all(np.isfinite(values)):
        raise NumericalDerivativeError('non-finite difference at t = %g' % t)
    return diff


def derivative_of(curve, t, h=None):
    """Exact derivative when `curve` provides one, else a central difference."""
    deriv = getattr(curve, 'derivative', None)
    if deriv is not None:
        return deriv(t)
    return central_difference(curve, t, h)


def wrap_angle(angle):
    r"""Map angles into :math:`(-\pi, \pi]`."""
    wrapped = np.pi - np.mod(np.pi - np.asarray(angle, dtype=float),
                             2 * np.pi)
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


def unwrap_half_angle(half_angles):
    r"""
    Remove the :math:`\pi` jumps of a half angle recovered from a rotor.

    A rotor and its negative describe the same rotation, so a half angle
    extracted with ``atan2`` is only defined modulo :math:`\pi`.
    """

    return np.unwrap(np.asarray(half_angles, dtype=float), period=np.pi)


def rk4_cumulative(rates, h):
    r"""
    Cumulative classical Runge-Kutta integral of a state-independent rate.

    For :math:`\dot{y} = f(t)` the four RK4 stages collapse to
    :math:`y_{n+1} = y_n + \frac{h}{6}[f(t_n) + 4f(t_n + h/2) + f(t_n + h)]`,
    so every rate is evaluated once on the half-step grid.

    Args:
        rates: ``(2N+1, ...)`` array of rates on the half-step grid
            ``t0, t0 + h/2, ..., t0 + N h``
        h (float): Full step

    Returns:
        ``(N+1, ...)`` array of integrals on the full-step grid, starting at 0
    """

    rates = np.asarray(rates, dtype=float)
    if rates.shape[0] < 3 or rates.shape[0] % 2 != 1:
        raise IndexError('RK4 needs an odd number (>= 3) of half-step samples')
    nodes = rates[0::2]
    mids = rates[1::2]
    increments = (h / 6.0) * (nodes[:-1] + 4.0 * mids + nodes[1:])
    out = np.zeros((nodes.shape[0],) + rates.shape[1:])
    out[1:] = np.cumsum(increments, axis=0)
    return out


def trapezoid_cumulative(rates, t):
    """Cumulative trapezoid integral of sampled rates, starting at 0."""
    return cumulative_trapezoid(np.asarray(rates, dtype=float),
                                np.asarray(t, dtype=float), axis=0, initial=0)


def first_failure(checks):
    """
    Earliest failing row over a list of row checks.

    Args:
        checks: ``(mask, make_error)`` pairs in priority order; ``mask``
            flags failing rows and ``make_error(row)`` builds the exception.
            On a tie the earlier check wins

    Returns:
        ``(row, exception)``, or `None` if every row passes
    """

    best = None
    for mask, make_error in checks:
        rows = np.flatnonzero(mask)
        if rows.size and (best is None or rows[0] < best[0]):
            best = (int(rows[0]), make_error)
    if best is None:
        return None
    return best[0], best[1](best[0])
