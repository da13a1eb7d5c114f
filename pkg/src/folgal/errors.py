"""Exception hierarchy.

Every error carries the name of the module layer that raised it, so the
command-line front end can tag failures with their origin and the first
violated precondition.
"""


class FolgalError(Exception):
    """Base class for all package errors."""

    module = "folgal"

    def __init__(self, message, module=None):
        if module is not None:
            self.module = module
        self.message = message
        super().__init__(message)

    def __str__(self):
        return "[%s] %s" % (self.module, self.message)


class InputSyntaxError(FolgalError):
    """Problem-file syntax error with position information."""

    module = "cli"

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = "line %d, col %d: %s" % (line, col, message)
        super().__init__(message)


class WeightMismatchError(FolgalError):
    module = "series"


class ScalarKindError(FolgalError):
    module = "series"


class SeriesOrderError(FolgalError):
    """Order or truncation insufficient for the requested operation."""

    module = "series"


class CompositionError(FolgalError):
    """Inner series of a composition has a nonzero constant term."""

    module = "series"


class NotQuasiHomogeneousError(FolgalError):
    module = "quasihomog"


class NonIsolatedSingularityError(FolgalError):
    module = "quasihomog"


class NotLogarithmicError(FolgalError):
    """The vector field is not tangent to the curve h = 0."""

    module = "quasihomog"


class PreconditionError(FolgalError):
    """A stated precondition of an operation is violated."""


class VerdictError(FolgalError):
    module = "invariant"


class UnsupportedFlowError(FolgalError):
    module = "onevar"


class NearSingularMatrixError(FolgalError):
    module = "periods"


class PathTrackingError(FolgalError):
    module = "periods"


class QuadratureError(FolgalError):
    module = "periods"


class UnsupportedCycleError(FolgalError):
    module = "periods"
