"""Exception types raised by the package."""


class ValidationError(ValueError):
    """Bad shapes, partitions or input values."""


class OrthogonalityError(ValidationError):
    """Blocks expected to be mutually orthogonal are not.

    Attributes
    ----------
    side : str
        ``"B"`` or ``"C"``.
    pair : tuple of int
        Zero-based indices of the offending block pair.
    norm : float
        Frobenius norm of their cross-Grammian.
    """

    def __init__(self, side, pair, norm, tol):
        self.side = side
        self.pair = pair
        self.norm = norm
        super().__init__(
            f"{side} blocks {pair[0]} and {pair[1]} are not orthogonal: "
            f"cross-Grammian norm {norm:.3e} exceeds {tol:.3e}"
        )


class NumericalError(ArithmeticError):
    """A decomposition failed (e.g. SVD did not converge).

    ``stage`` names the pipeline step that failed, when known.
    """

    def __init__(self, message, stage=None):
        self.stage = stage
        if stage is not None:
            message = f"[{stage}] {message}"
        super().__init__(message)
