"""Error taxonomy shared by every module.

Exit-code mapping for the CLI: PreconditionError and InvalidSpecError -> 2,
CapExceededError -> 3.
"""


class ClasscoverError(Exception):
    """Base class; carries a short machine-readable reason code."""

    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or reason)


class InvalidSpecError(ClasscoverError):
    """A group description is malformed (bad kind, p not prime, ...)."""


class CapExceededError(ClasscoverError):
    """A configured resource cap was hit (enumeration, lattice, algebra)."""


class PreconditionError(ClasscoverError):
    """An operation's stated precondition does not hold for the input."""
