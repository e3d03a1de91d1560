"""Exception types raised by the library."""

from __future__ import annotations


class FCAError(ValueError):
    """Base class for all library errors."""


class ContextParseError(FCAError):
    """Malformed context or preference text.

    ``line`` and ``column`` are 1-based when known.
    """

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


class UnknownNameError(FCAError):
    def __init__(self, kind: str, name: str, column: int | None = None):
        self.kind = kind
        self.name = name
        self.column = column
        where = f"column {column}: " if column is not None else ""
        super().__init__(f"{where}unknown {kind} {name!r}")


class OrderCycleError(FCAError):
    """Declared preference pairs do not form a strict partial order."""

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("preference cycle: " + " < ".join(cycle))


class BoundExceededError(FCAError):
    pass


class ArityError(FCAError):
    pass
