"""Exceptions shared across the package."""


class ShiftlabError(Exception):
    """Base class for all package errors."""


class DomainError(ShiftlabError):
    """An argument is outside the domain of the operation."""


class UndecidedError(ShiftlabError):
    """A digit (or comparison) could not be certified at the working precision.

    Raised instead of guessing whenever an enclosure straddles a partition
    boundary.  ``index`` is the position of the offending digit, when known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ContractViolation(ShiftlabError):
    """A hard invariant of a construction failed at run time."""


class RetryBudgetExceeded(ShiftlabError):
    """Rejection sampling failed to produce an acceptable block in time."""
