"""Exception types shared across the toolkit.

Exit-code mapping used by the CLI:
  ValidationError (and subclasses) -> 1
  missing files (OSError/FileNotFoundError) -> 2
  NumericError -> 3
"""


class ValidationError(ValueError):
    """An input violates a documented precondition or invariant."""


class DataFormatError(ValidationError):
    """A data or config file does not match its documented grammar."""


class NumericError(ArithmeticError):
    """A numerical routine failed (non-PD pivot, rank deficiency, ...)."""
