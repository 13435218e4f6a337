"""Exception hierarchy shared by all partial_l1 modules."""


class PartialL1Error(Exception):
    """Base class for every error raised by this package."""


class DomainError(PartialL1Error, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateModelError(DomainError):
    """A parameter combination collapses a defining equation (no root exists)."""


class SolverError(PartialL1Error, RuntimeError):
    """A root finder or optimizer could not certify a solution.

    The message carries the bracket endpoints and function values seen at the
    point of failure so the caller can report diagnostics.
    """


class LpError(PartialL1Error, RuntimeError):
    """The linear-programming back end failed or returned an uncertifiable point."""
