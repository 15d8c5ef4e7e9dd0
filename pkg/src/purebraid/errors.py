class PureBraidError(Exception):
    """Base class for errors raised by this package."""


class InputError(PureBraidError, ValueError):
    """Malformed or out-of-range input. ``position`` is a character offset when known."""

    def __init__(self, message: str, position: int | None = None, kind: str = "syntax"):
        self.position = position
        self.kind = kind
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PurityError(InputError):
    def __init__(self, message: str):
        super().__init__(message, kind="purity")


class BudgetExceeded(PureBraidError):
    """A computation would exceed the configured work budget."""
