"""Exception hierarchy for cyclosrg."""


class CycloSrgError(Exception):
    """Base class for all library errors."""


class NonPrimeError(CycloSrgError, ValueError):
    pass


class DegreeTooLargeError(CycloSrgError, ValueError):
    pass


class CapExceededError(CycloSrgError):
    """A computation would enumerate more group elements than allowed."""

    def __init__(self, needed: int, cap: int, what: str = "enumeration"):
        self.needed = needed
        self.cap = cap
        super().__init__(f"{what} needs {needed} elements, cap is {cap}")


class NotDivisorError(CycloSrgError, ValueError):
    pass


class NotCoprimeError(CycloSrgError, ValueError):
    pass


class UnsupportedMError(CycloSrgError, ValueError):
    pass


class NotRationalError(CycloSrgError):
    pass


class NotInKError(CycloSrgError):
    pass


class NotInPeriodBasisError(CycloSrgError):
    pass


class ParityViolationError(CycloSrgError):
    pass


class NonIntegralPeriodError(CycloSrgError):
    pass


class InconsistentSpectrumError(CycloSrgError, ValueError):
    pass


class NoneFoundError(CycloSrgError):
    pass
