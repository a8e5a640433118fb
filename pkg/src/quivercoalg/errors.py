"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class QuiverCoalgError(Exception):
    """Base class for domain errors (CLI exit status 1)."""

    module = "quivercoalg"


class ContractError(QuiverCoalgError, ValueError):
    """An operation was called outside its precondition."""

    def __init__(self, message: str, module: str = "quivercoalg"):
        super().__init__(message)
        self.module = module


class AmbientMismatch(ContractError):
    def __init__(self, message: str = "vectors live in different ambient path lists"):
        super().__init__(message, module="exactlinalg")


class DimensionOverflow(ContractError):
    def __init__(self, message: str):
        super().__init__(message, module="comodules")


class ParseError(Exception):
    """Malformed input text. Carries 1-based line and column (CLI exit status 2)."""

    def __init__(self, message: str, line: int = 0, column: int = 0, source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")
