"""Exception types shared across the package."""


class SigflowError(Exception):
    """Base class for all package errors."""


class _Located(SigflowError):
    """Error that may point at a place in some source text.

    ``position`` is a 0-based character offset; ``line`` and ``column`` are
    1-based and filled in when the text has several lines.
    """

    def __init__(self, message, position=None, line=None, column=None):
        self.message = message
        self.position = position
        self.line = line
        self.column = column
        super().__init__(message)

    def __str__(self):
        if self.line is not None:
            return f"{self.line}:{self.column}: {self.message}"
        if self.position is not None:
            return f"offset {self.position}: {self.message}"
        return self.message


class DivisionByZero(SigflowError, ZeroDivisionError):
    pass


class FieldMismatch(SigflowError, TypeError):
    pass


class ParseError(_Located, ValueError):
    pass


class TypeMismatch(_Located, TypeError):
    pass


class UnknownName(_Located, LookupError):
    pass


class DuplicateName(_Located, ValueError):
    pass


class NonFinVectGenerator(SigflowError, ValueError):
    pass


class DimensionMismatch(SigflowError, ValueError):
    pass


class NotAMap(SigflowError, ValueError):
    """A relation that is not the graph of a linear map.

    ``reason`` is ``"not-total"`` or ``"not-functional"``.
    """

    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"relation is not a linear map ({reason})")


class OracleTooLarge(SigflowError, ValueError):
    pass
