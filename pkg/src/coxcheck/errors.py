"""Shared exception types."""


class CoxcheckError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CoxcheckError):
    """Malformed or inconsistent user input (files, matrices, polynomials)."""


class DomainError(CoxcheckError):
    """A documented precondition of an operation was violated."""


class NonGenericPolarizationError(DomainError):
    """The polarizing class sits on a GIT chamber wall, so no canonical
    ambient fan exists for it."""
