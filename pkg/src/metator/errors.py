"""Exception hierarchy shared across the package."""


class MetatorError(Exception):
    """Base class for all errors raised by metator."""


class NotSymmetric(MetatorError):
    pass


class NotEven(MetatorError):
    pass


class DegeneratePairing(MetatorError):
    """The residual pairing has a nontrivial radical (indicates a bug)."""


class ZeroElement(MetatorError):
    pass


class UnsupportedField(MetatorError):
    pass


class ZeroFunction(MetatorError):
    pass


class BadCharacteristic(MetatorError):
    pass


class NotIntegral(MetatorError):
    pass


class SupportViolation(MetatorError):
    pass


class NotSharp(MetatorError):
    pass


class UnsupportedSupport(MetatorError):
    pass


class InvalidCharacter(MetatorError):
    pass


class NoExtension(MetatorError):
    pass


class BoundTooSmall(MetatorError):
    pass


class NotExtending(MetatorError):
    pass


class TooLarge(MetatorError):
    """A desk-scale size cap was exceeded."""


class ParseError(MetatorError):
    pass


class InvariantViolation(MetatorError):
    def __init__(self, name, detail=""):
        self.name = name
        super().__init__(f"{name}: {detail}" if detail else name)
