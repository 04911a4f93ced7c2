"""Exception hierarchy shared across the package.

Three base classes partition failures by meaning (and by CLI exit code):
bad input, a mathematical obstruction discovered during a computation, and
an exhausted search/enumeration budget.
"""


class ArcModelError(Exception):
    """Base class for all package errors."""


class InputError(ArcModelError):
    """Malformed or inconsistent input data (CLI exit code 3)."""


class MathError(ArcModelError):
    """A mathematically meaningful failure, e.g. an arc stuck in the
    singular locus or a certificate that cannot be produced (exit code 2)."""


class BudgetError(ArcModelError):
    """A configured search or enumeration cap was exceeded (exit code 4)."""
