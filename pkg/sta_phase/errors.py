"""
Exceptions raised by :mod:`sta_phase`.

Each class also derives from the builtin a plain numpy routine would raise in
the same situation, so ``except ValueError`` keeps working for callers that do
not care about the finer distinction.
"""


class STAPhaseError(Exception):
    """Base class for every error raised by this package."""


class DomainError(STAPhaseError, ValueError):
    """Input outside the domain of an operation (wrong grade, odd parity)."""


class ContractViolationError(STAPhaseError, ValueError):
    """A value that must be a unit rotor is not one."""


class DecompositionError(STAPhaseError, ValueError):
    """A spinor or rotor cannot be factored as requested."""


class DegenerateSpinorError(DecompositionError):
    """The spinor density is below the singularity threshold."""


class NotDiracSpinorError(DecompositionError):
    """psi * rev(psi) is not a scalar plus pseudoscalar."""


class NonOrthochronousError(DecompositionError):
    """The proper velocity does not point forward in time."""


class NotCorayError(STAPhaseError, ValueError):
    """Two spinors do not lie on the same ray.

    Attributes:
        residual (float): Relative distance left after the best phase match
    """

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class NumericalDerivativeError(STAPhaseError, ArithmeticError):
    """A finite difference produced non-finite values."""


class RangeError(STAPhaseError, IndexError):
    """A curve was sampled outside its domain."""


class ScenarioError(STAPhaseError, ValueError):
    """A scenario file or parameter set violates the schema.

    Attributes:
        field (str): Dotted path of the offending field, if known
        line (int): Line number in the source file, if known
    """

    def __init__(self, message, field=None, line=None):
        parts = []
        if line is not None:
            parts.append('line %d' % line)
        if field is not None:
            parts.append("field '%s'" % field)
        if parts:
            message = '%s: %s' % (', '.join(parts), message)
        super().__init__(message)
        self.field = field
        self.line = line


class IntegrationError(STAPhaseError, ArithmeticError):
    """Phase integration aborted.

    Attributes:
        t (float): Trajectory time at which the failure occurred
    """

    def __init__(self, message, t):
        super().__init__('t = %.17g: %s' % (t, message))
        self.t = t
