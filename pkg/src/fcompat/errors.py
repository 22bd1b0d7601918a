"""Exception hierarchy shared by every layer of the package."""


class FcompatError(Exception):
    """Base class for all errors raised by fcompat."""


class ParseError(FcompatError, ValueError):
    """Malformed polynomial or presentation text."""

    def __init__(self, message, position=None, line=None):
        self.position = position
        self.line = line
        self.detail = message
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"position {position}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class RingMismatchError(FcompatError, ValueError):
    """Operands live in different rings."""


class ExponentOverflowError(FcompatError, OverflowError):
    """An exponent or total degree left the supported 31-bit range."""


class ResourceExhausted(FcompatError, RuntimeError):
    """A configured computation cap was hit before the result was certain."""

    def __init__(self, message, cap=None, value=None):
        self.cap = cap
        self.value = value
        super().__init__(message)


class PreconditionError(FcompatError, ValueError):
    """An operation was called on inputs outside its contract."""


class NotFPureError(PreconditionError):
    """The presented ring fails Fedder's criterion."""


class CapabilityError(FcompatError, RuntimeError):
    """Prime decomposition could not certify its answer."""

    def __init__(self, message, ideal=None, stage=None):
        self.ideal = ideal
        self.stage = stage
        super().__init__(message)


class InvariantError(FcompatError, AssertionError):
    """A mathematical invariant that must hold was observed to fail."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class TruncationOverflow(FcompatError, ValueError):
    """An inverse-polynomial image would leave the truncation box."""

    def __init__(self, message, required=None):
        self.required = required
        super().__init__(message)
