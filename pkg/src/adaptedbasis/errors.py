"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class AdaptedBasisError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetError(AdaptedBasisError, ValueError):
    """A letter or token does not belong to the ambient generator alphabet."""


class SizeLimitError(AdaptedBasisError):
    """A group closure grew beyond the configured order bound."""


class InvalidCoverError(AdaptedBasisError, ValueError):
    """The signature, group and generating vector do not describe a cover."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class TransversalError(AdaptedBasisError, ValueError):
    """A transversal override is not a Schreier transversal for the cover."""


class NotInKernelError(AdaptedBasisError, ValueError):
    """The word handed to the rewriting process does not map to the identity."""


class TietzeError(AdaptedBasisError, ValueError):
    """A Tietze move was requested with its precondition violated."""


class BudgetError(AdaptedBasisError):
    """Relator growth exceeded the simplifier's length budget."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace


class IntegrityError(AdaptedBasisError):
    """An internal consistency check failed (e.g. rank of H1 is not 2g)."""


class ClassificationRequiredError(AdaptedBasisError):
    """A block report was requested for an incompletely classified basis."""
