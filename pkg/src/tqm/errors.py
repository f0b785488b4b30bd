"""Exception types shared across the engine."""


class DomainError(ValueError):
    """An operation was applied outside its domain (rank mismatch, bad index, ...)."""


class ExprSyntaxError(ValueError):
    """Malformed expression text. ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class SignProblemError(RuntimeError):
    """The Monte Carlo normalisation E[exp(iS/hbar)] is statistically indistinguishable from 0."""
