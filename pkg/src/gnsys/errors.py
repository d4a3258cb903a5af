"""Exception hierarchy for the engine."""

from __future__ import annotations


class GnsError(Exception):
    """Base class for every error raised by :mod:`gnsys`."""


class OrderValidationError(GnsError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid multiplication table: {report.summary()}")


class DimensionMismatch(GnsError):
    pass


class ForeignOrder(GnsError):
    """Operands belong to different orders."""


class ZeroDivisor(GnsError):
    """An element with norm zero was used where an invertible one is required."""


class ZeroDivisorConstantTerm(ZeroDivisor):
    pass


class NotDivisible(GnsError):
    pass


class NotACompleteResidueSystem(GnsError):
    pass


class MissingZeroDigit(GnsError):
    pass


class ForeignDigit(GnsError):
    pass


class DigitSetMismatch(GnsError):
    """The digit set is not the one induced by the given fundamental domain."""


class InvalidDomain(GnsError):
    pass


class ZeroConstantTerm(GnsError):
    pass


class StepLimitExceeded(GnsError):
    pass


class StateSpaceExceeded(GnsError):
    def __init__(self, needed: int, limit: int):
        self.needed = needed
        self.limit = limit
        super().__init__(f"state space of {needed} states exceeds the cap {limit}")


class ContractionSearchExceeded(GnsError):
    pass


class NotAGenerator(GnsError):
    pass


class EmptyRange(GnsError):
    pass


class TrivialDigitSetWarning(UserWarning):
    """|N(p(0))| = 1, so the digit set is {0} and only 0 is representable."""
