"""Exception taxonomy shared by all cubesep modules."""

from __future__ import annotations


class CubesepError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(CubesepError, ValueError):
    """Operands live in different coordinate dimensions."""


class IndexRangeError(CubesepError, ValueError):
    """A coordinate index is outside 1..dim."""


class PreconditionError(CubesepError, ValueError):
    """An operation's documented precondition does not hold for the input."""


class BudgetExceededError(CubesepError, RuntimeError):
    """A configured enumeration or search budget would be exceeded.

    Raised up-front when the total work is predictable, never as silent
    truncation of a partial result.
    """


class SearchDefectError(CubesepError, RuntimeError):
    """A search that is guaranteed to succeed on valid input exhausted its
    space.  This signals a bug (or an invalid ground set that slipped past
    validation) and must never be swallowed."""


class ResearchFlagError(CubesepError, RuntimeError):
    """An exhaustive search disproved a size guarantee on a valid input.

    The offending input is attached so it can be preserved and inspected
    instead of being silently degraded.
    """

    def __init__(self, message: str, artifact=None):
        super().__init__(message)
        self.artifact = artifact


class DegenerateSpecError(CubesepError, ValueError):
    """A norm description does not define a norm (functionals or points do
    not span the space)."""


class AuerbachSearchError(CubesepError, RuntimeError):
    """No candidate basis passed verification after all restarts."""

    def __init__(self, message: str, best_residuals=None):
        super().__init__(message)
        self.best_residuals = best_residuals
