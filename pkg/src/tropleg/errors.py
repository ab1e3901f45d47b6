"""Exception hierarchy shared across the package.

Everything raised on bad mathematical input derives from :class:`TroplegError`
so the command line driver can map "domain" failures to a single exit code.
"""

from __future__ import annotations


class TroplegError(Exception):
    """Base class for all domain errors raised by this package."""


class FieldMismatchError(TroplegError):
    """Two operands live over different coefficient fields."""


class NonPrimeModulusError(TroplegError):
    """A prime field was requested with a composite (or tiny) modulus."""


class WindowError(TroplegError):
    """A series coefficient or degree was requested outside the window
    of exponents on which the series is actually known."""


class DegeneracyError(TroplegError):
    """A point configuration made one of the normalisation pivots vanish.

    The message names the first pivot that broke so callers can tell
    which genericity assumption failed.
    """


class StagnationError(TroplegError):
    """Newton iteration stopped making progress.

    Carries the iteration trace in :attr:`trace` as a list of
    ``(iteration, residual_degree, derivative_degree, step_exponent)``.
    """

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])


class ExtensionRequiredError(TroplegError):
    """The computation needs a root that does not exist in the ground field."""


class UnbalancedGraphError(TroplegError):
    """A tropical curve graph failed the balancing condition at some vertex."""
