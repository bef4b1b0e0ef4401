"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside an operation's domain (bad descriptor, non-member, ...)."""


class NotMember(DomainError):
    """Digit reduction (or another membership certificate) failed."""


class Unsupported(DomainError):
    """Operation not defined for this semialgebra kind."""


class Inconclusive(Exception):
    """A bounded search could neither confirm nor refute the query.

    Carries the bounds that were in effect so callers can retry with
    larger ones.
    """

    def __init__(self, message="bounded search inconclusive", bounds=None):
        super().__init__(message)
        self.bounds = bounds
