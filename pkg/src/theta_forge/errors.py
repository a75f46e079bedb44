"""Exception types shared across the package.

The CLI maps these onto process exit codes, so every module raises one of
them rather than a bare ValueError.
"""


class ThetaForgeError(Exception):
    """Base class."""


class DomainError(ThetaForgeError, ValueError):
    """Input outside the mathematical domain of an operation."""


class DimensionError(DomainError):
    pass


class PrecisionUnreachable(ThetaForgeError):
    """The requested tolerance needs more work than the configured cap allows."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class IllConditioned(DomainError):
    pass


class BasisFailure(ThetaForgeError):
    """A computed period matrix failed the symmetry / positivity checks."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class Unsupported(DomainError):
    """A well-formed input that no implemented route handles."""
