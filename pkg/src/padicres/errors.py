"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: InvalidInput -> 2, the retryable
precision family (TailUncertain, PrecisionExhausted) -> 3, and
NotApplicable -> 4.
"""


class PadicError(Exception):
    """Base class for all library errors."""


class InvalidInput(PadicError):
    """Malformed or out-of-range input."""


class ContextMismatch(PadicError):
    """Operands belong to different ambient contexts."""


class PrecisionExhausted(PadicError):
    """The answer is not determined at the working precision.

    Retry with a larger N.
    """


class TailUncertain(PadicError):
    """The truncated data plus tail certificate cannot settle the question."""


class NotApplicable(PadicError):
    """A structural precondition fails (e.g. non-unit leading coefficient)."""


class NotAUnit(PadicError):
    """Inversion of a power series whose constant term is not a unit."""


class CommonRoots(PadicError):
    """The two series share a root, so the requested quantity is undefined."""


class NotSquareFree(PadicError):
    """Polynomial has a repeated factor; carries the offending gcd."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor
