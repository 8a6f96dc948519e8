class DomainError(ValueError):
    """
        Raised when an argument lies outside the physical domain of the walk,
        e.g., a coin bias outside [0, 1] or a boundary placement M < 1.
    """


class UsageError(ValueError):
    """
        Raised by the command-line parsers in place of argparse's exit(2)
    """


class EstimationError(ValueError):
    """
        Raised when the likelihood carries no usable information
    """


class LatticeOverflowError(RuntimeError):
    """
        Amplitude reached the left edge of the simulation window; the window
        was built too small for the number of steps requested.
    """


class QuadratureError(ArithmeticError):
    def __init__(self, message: str, estimate: float, error: float) -> None:
        super().__init__(f"{message} (estimate: {estimate:.12g}, error: {error:.3g})")
        self._estimate = estimate
        self._error = error

    @property
    def estimate(self) -> float:
        return self._estimate

    @property
    def error(self) -> float:
        return self._error
