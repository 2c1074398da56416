"""Exception types shared across the package."""


class NdsupportError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(NdsupportError, ValueError):
    """Malformed input: dimension mismatch, bad weights, invalid instance data."""


class ParseError(ValidationError):
    """Instance text could not be parsed."""


class EnumerationCapError(ValidationError):
    """Instance exceeds the brute-force enumeration cap."""


class ConsistencyError(NdsupportError):
    """An internal invariant that must hold by construction was violated.

    Raised when independently computed results disagree (e.g. a witness
    fails its certificate check, or the equivalence between the
    witness-based and geometry-based supportedness tests breaks).  This
    always indicates an implementation bug, never bad user input.
    """
