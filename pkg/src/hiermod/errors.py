"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class ParseError(ValueError):
    """A text document failed to parse or validate.

    ``line`` and ``column`` are 1-based; either may be None when the error
    concerns the document as a whole.
    """

    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = source or "<text>"
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


class ConvergenceError(ArithmeticError):
    """Quadrature orders disagree by more than the configured tolerance."""

    def __init__(self, message, estimates):
        self.estimates = tuple(estimates)
        super().__init__(f"{message} (estimates: {', '.join(f'{e:.9g}' for e in self.estimates)})")


class RateNotFound(DomainError, LookupError):
    """A coding rate is absent from a reference table."""
