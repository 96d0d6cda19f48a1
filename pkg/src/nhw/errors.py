"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An argument broke a documented precondition."""


class DenominatorVanishes(ArithmeticError):
    """A substitution or evaluation turned a denominator into zero."""


class ZeroWeight(ArithmeticError):
    """A character contains the trivial weight, so its Euler class is zero."""


class CapExceeded(RuntimeError):
    """An operator was requested on levels beyond the truncation cap."""
