"""Exceptions raised by the package."""


class ContractError(ValueError):
    """An argument violates an operation's precondition."""


class BudgetExceeded(RuntimeError):
    """Adaptive quadrature ran out of subdivisions before certifying the tolerance."""


class WindowTooSmall(ValueError):
    pass


class UndefinedWeightError(ArithmeticError):
    """A symbol/monomial pairing has a divergent moment, so the weight is undefined."""

    def __init__(self, indices):
        self.indices = list(indices)
        shown = ", ".join(f"({a},{b})" for a, b in self.indices)
        super().__init__(f"undefined weight at {shown}")


class PointOutsideSupportedRegion(ValueError):
    pass
