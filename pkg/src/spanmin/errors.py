"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Malformed construction input (bad dimensions, empty boxes, ...)."""


class PreconditionError(ValueError):
    """An operation was called on data violating its stated precondition."""


class RealizationError(ValueError):
    """A constraint's geometric support cannot be realized in the model."""


class InfeasibleError(RuntimeError):
    """No candidate set satisfies the spanning constraints."""


class PoolTooLargeError(ValueError):
    """Exhaustive search refused; use the local minimizer instead."""


class ProblemFormatError(ValueError):
    """Problem file rejected; carries every violation found, not just the first."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
