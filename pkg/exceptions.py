"""
Error types shared by every module.
"""


class HypergraphError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HypergraphError, ValueError):
    """Invalid arguments or a violated precondition."""


class ParseError(InputError):
    """Malformed hypergraph file; carries the source name and 1-based line."""

    def __init__(self, source, line, message):
        self.source = source
        self.line = line
        self.message = message
        super().__init__(f"{source}:{line}: {message}")


class CapacityError(HypergraphError):
    """An exponential routine was asked for more than its size guard allows."""


class WalkOverflowError(HypergraphError, OverflowError):
    """A checked walk count left the signed 64-bit range."""


class ConvergenceError(HypergraphError):
    """A spectral radius was needed but the power iteration did not converge."""

    def __init__(self, message, result=None):
        self.result = result
        super().__init__(message)
