"""Exception hierarchy.

Every error carries a stable ``reason`` (the class name) so the CLI can report
structured failures.
"""


class DeborderError(Exception):
    """Base class for all library errors."""

    @property
    def reason(self) -> str:
        return type(self).__name__


class DivisionByZero(DeborderError, ZeroDivisionError):
    pass


class ContextMismatch(DeborderError):
    pass


class ZeroValuation(DeborderError):
    pass


class PoleAtZero(DeborderError):
    pass


class ArityMismatch(DeborderError):
    pass


class OrderOutOfRange(DeborderError):
    pass


class ZeroInput(DeborderError):
    pass


class LimitDoesNotExist(DeborderError):
    pass


class NotLocal(DeborderError):
    pass


class DegreeTooLow(DeborderError):
    pass


class CrossClassCancellation(DeborderError):
    pass


class LocalStructureViolation(DeborderError):
    pass


class ProportionalForms(DeborderError):
    pass


class SynthesisError(DeborderError):
    pass


class InvalidFamily(DeborderError):
    pass


class ConductorTooLarge(DeborderError):
    pass


class ParseError(DeborderError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
