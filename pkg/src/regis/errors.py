"""Exception hierarchy shared across the package."""


class RegisError(Exception):
    """Base class for all package errors."""


class SizeError(RegisError, ValueError):
    """A graph or parameter exceeds the supported size range."""


class CapacityError(RegisError):
    """The requested computation is beyond the engine's enumeration caps."""


class ParseError(RegisError, ValueError):
    """Malformed graph6 input."""

    def __init__(self, message, offset=None, line=None):
        self.reason = message
        self.offset = offset
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class ParityError(RegisError, ValueError):
    """n*d is odd, so no d-regular graph on n vertices exists."""


class ContractError(RegisError, ValueError):
    """An input violates the precondition of an operation."""


class DomainError(RegisError, ValueError):
    """A numeric argument lies outside the operation's domain."""


class ValidationError(RegisError, ValueError):
    """An ingested graph does not match the requested class."""
