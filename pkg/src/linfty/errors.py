"""Shared exception types.

The CLI maps these onto exit codes, so everything raised on bad user input
should be one of the classes below rather than a bare ValueError.
"""


class LinftyError(Exception):
    """Base class for all package errors."""


class DegreeError(LinftyError):
    """A vector, map or table entry violates the degree bookkeeping."""


class ValidationError(LinftyError):
    """Structured input fails an axiom or well-formedness check."""


class NotMaurerCartan(LinftyError):
    """A twist was requested along an element with nonzero curvature."""


class SeriesTruncation(LinftyError):
    """A bracket series was cut off before it could be certified finite."""


class FormatError(LinftyError):
    """A problem file could not be parsed."""


class BudgetExceeded(LinftyError):
    """An enumeration grew past its configured cap."""
