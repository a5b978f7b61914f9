"""Exception hierarchy shared by all liftspace modules."""

from __future__ import annotations


class LiftspaceError(Exception):
    """Base class for every error raised by liftspace."""


class DimensionMismatch(LiftspaceError, ValueError):
    pass


class ZeroVectorDyad(LiftspaceError, ValueError):
    pass


class ZeroState(LiftspaceError, ValueError):
    pass


class FamilyTooLarge(LiftspaceError, ValueError):
    def __init__(self, arity: int, max_arity: int) -> None:
        self.arity = arity
        self.max_arity = max_arity
        self.num_functions = 2 ** (2**arity)
        self.lifted_dim = 2**arity + self.num_functions
        super().__init__(
            f"arity {arity} exceeds the cap {max_arity}: "
            f"{self.num_functions} functions, {self.lifted_dim} lifted dimensions"
        )


class ArityMismatch(LiftspaceError, ValueError):
    pass


class PredicateParseError(LiftspaceError, ValueError):
    def __init__(self, message: str, position: int, text: str = "") -> None:
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownBasisIndex(LiftspaceError, IndexError):
    pass


class NotAPVM(LiftspaceError):
    pass


class StateOutsideSpan(LiftspaceError):
    def __init__(self, residual) -> None:
        self.residual = residual
        super().__init__(
            f"state has weight {residual.numerator}/{residual.denominator} "
            "outside the span of the measured projectors"
        )


class CoefficientGrowthError(LiftspaceError):
    """Lifting stopped because a coefficient outgrew the configured bit budget."""

    def __init__(self, index: int, bits: int, max_bits: int) -> None:
        self.index = index
        self.bits = bits
        self.max_bits = max_bits
        super().__init__(
            f"lifted vector {index} has a {bits}-bit coefficient "
            f"(budget {max_bits} bits)"
        )
