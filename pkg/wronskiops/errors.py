"""
Exception hierarchy shared by the library and the command line.

Every error carries the process exit code the CLI reports for it.
"""
from typing import Optional


class WronskiOpsError(Exception):
    """Base class for every error raised by wronskiops."""
    exit_code = 1


class InstanceSyntaxError(WronskiOpsError, ValueError):
    """Malformed instance text, inconsistent dimensions or invalid exponents."""
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class ZeroPolynomialError(WronskiOpsError, ValueError):
    """An operation that is undefined on the zero polynomial received it."""


class DegenerateBaseError(WronskiOpsError, ValueError):
    """A base polynomial used with a positive exponent is identically zero."""

    def __init__(self, index: Optional[int] = None):
        where = "" if index is None else f" f{index + 1}"
        super().__init__(f"degenerate base{where}: zero polynomial")
        self.index = index


class DependentPrefixError(WronskiOpsError, ValueError):
    """A prefix Wronskian vanishes identically where independence is required."""


class PowerOrderError(WronskiOpsError, ValueError):
    """The closed-form power derivative needs alpha >= p."""


class ExpansionBudgetError(WronskiOpsError):
    """Fully expanding an instance would exceed the configured budget."""
    exit_code = 3

    def __init__(self, detail: str):
        super().__init__(f"expansion too large: {detail}")


class ResourceLimitError(WronskiOpsError):
    """A configured resource cap (basis size, query count) was reached."""
    exit_code = 3


class SoundnessViolation(WronskiOpsError):
    """An exact root count exceeded a bound that claims to dominate it."""
    exit_code = 4
