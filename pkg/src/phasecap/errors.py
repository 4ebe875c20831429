"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a documented precondition (shape, sign, grid, ...)."""

    code = "validation"


class NumericalError(ArithmeticError):
    """A numerical routine failed to deliver its contract (e.g. no convergence)."""

    code = "numerical"
