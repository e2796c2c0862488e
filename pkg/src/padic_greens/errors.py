"""Exception hierarchy. Every error is a ValueError so callers can catch broadly."""


class PadicError(ValueError):
    pass


class BadPrime(PadicError):
    pass


class ZeroArgument(PadicError):
    pass


class ZeroVector(PadicError):
    pass


class DimensionMismatch(PadicError):
    pass


class NotIntegral(PadicError):
    pass


class PivotNotUnit(PadicError):
    pass


class DegreeMismatch(PadicError):
    pass


class NotAMorphism(PadicError):
    pass


class BadRange(PadicError):
    pass


class BadStrategy(PadicError):
    pass


class ParseError(PadicError):
    pass
