"""Exception types shared across the package.

Both derive from ValueError so callers that do not care about the
distinction can catch one base class. The CLI maps InputFormatError to
exit code 2 and PreconditionError to exit code 3.
"""


class InputFormatError(ValueError):
    """Malformed or unreadable input data (bad file, bad row, bad field)."""


class PreconditionError(ValueError):
    """A statistical precondition is violated (too few points, zero
    uncertainties where positive ones are required, and so on)."""
