"""Exception types shared across the package.

The CLI maps each class to a fixed exit code, so library code raises these
rather than bare ``ValueError``.
"""


class RainbowSatError(Exception):
    """Base class for all package errors."""


class ParameterError(RainbowSatError, ValueError):
    """An argument is out of range or inconsistent with another argument."""


class ResourceError(RainbowSatError):
    """A search would exceed (or did exceed) its configured budget."""


class ContractViolation(RainbowSatError):
    """An input does not satisfy the precondition an operation relies on."""


class FormatError(RainbowSatError, ValueError):
    """A graph or code file could not be parsed."""
