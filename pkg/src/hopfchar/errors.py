"""Exception hierarchy.

``DomainError`` covers mathematically invalid requests (exit status 1 in the
CLI); ``ParseError`` covers malformed text input (exit status 2).
"""


class HopfcharError(Exception):
    pass


class DomainError(HopfcharError, ValueError):
    pass


class KindError(DomainError):
    """A functional of the wrong kind (character / infinitesimal) was passed."""


class MismatchError(DomainError):
    """Operands live over different bases, targets or truncations."""


class PoleOverflow(DomainError):
    """A Laurent product needs a pole deeper than the configured bound."""


class TargetError(DomainError):
    """The target algebra lacks an operation (e.g. an exponential)."""


class ParseError(HopfcharError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.reason = message
        super().__init__(f"line {line}: {message}" if line is not None else message)
