"""Exception hierarchy shared across the package.

Everything raised on purpose derives from :class:`ResumError`, so callers
(and the command line front end) can distinguish a deliberate diagnostic
from a genuine bug.
"""


class ResumError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(ResumError, ValueError):
    """A call violated an operation's contract (bad arguments or state)."""


class DomainError(ResumError, ValueError):
    """An input lies outside the mathematical domain of the operation."""


class DiagnosticError(ResumError, ArithmeticError):
    """A numeric sanity check failed (e.g. a tail that should alternate in
    sign does not)."""


class SelectionError(ResumError, ArithmeticError):
    """No admissible mapping-scale candidate exists at the requested order."""


class FixedPointError(ResumError, ArithmeticError):
    """The truncated flow polynomial has no usable zero at this order."""


class FitError(ResumError, ArithmeticError):
    """Too few usable orders to fit a trend."""


class DegeneracyError(ResumError, ArithmeticError):
    """A rational-fit linear system is singular or numerically rank
    deficient."""


class PoleError(ResumError, ArithmeticError):
    """Evaluation was requested at, or too close to, a pole."""


class SummabilityError(ResumError, ArithmeticError):
    """A rational Borel transform carries a pole on the integration axis."""


class SolverError(ResumError, ArithmeticError):
    """An iterative solver failed to converge from every seeded start."""


class ResourceError(ResumError, RuntimeError):
    """An adaptive computation exceeded its configured budget."""


class ParseError(ResumError, ValueError):
    """A series file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
