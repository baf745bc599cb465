"""Exception hierarchy. Every failure raised by the package derives from PadicError."""


class PadicError(Exception):
    pass


class NotPrime(PadicError, ValueError):
    pass


class PrimeMismatch(PadicError, ValueError):
    pass


class ZeroInput(PadicError, ValueError):
    pass


class ZeroB(PadicError, ValueError):
    pass


class NoRootInQp(PadicError, ValueError):
    """Square root does not exist in Q_p; ``criterion`` names the failed test."""

    def __init__(self, message, criterion):
        super().__init__(message)
        self.criterion = criterion


class InsufficientPrecision(PadicError, ArithmeticError):
    pass


class ParseError(PadicError, ValueError):
    pass


class SingularPoint(PadicError, ZeroDivisionError):
    pass


class NotUniqueFixedPoint(PadicError, ValueError):
    pass


class DegenerateAB(PadicError, ValueError):
    pass


class CriticalRadius(PadicError, ValueError):
    pass


class NotCriticalSphere(PadicError, ValueError):
    pass


class NotInvariantRadius(PadicError, ValueError):
    pass


class NonIntegralRadius(PadicError, ValueError):
    pass


class WrongCase(PadicError, ValueError):
    pass


class BallNotInSphere(PadicError, ValueError):
    pass


class NotSelfMap(PadicError, ValueError):
    pass


class WrongPrimeOrCase(PadicError, ValueError):
    pass


class ExcludedQ(PadicError, ValueError):
    pass


class NotPeriodicPair(PadicError, ValueError):
    pass
