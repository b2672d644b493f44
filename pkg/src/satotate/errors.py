"""Exception hierarchy shared by every module."""


class SatoTateError(Exception):
    """Base class for all errors raised by this package."""


class BadReduction(SatoTateError):
    pass


class AmbiguousOrder(SatoTateError):
    pass


class WeilViolation(SatoTateError):
    pass


class ParseError(SatoTateError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NonMonotonePrimes(ParseError):
    pass


class MissingCoefficient(SatoTateError):
    pass


class RangeExceeded(SatoTateError):
    pass


class EmptyRange(SatoTateError):
    pass


class RamifiedUnsupported(SatoTateError):
    """Raised for prime powers of a ramified prime.

    ``bound`` carries the only available information, ``(m+1) log p``.
    """

    def __init__(self, message, bound=None):
        self.bound = bound
        super().__init__(message)


class DegreeOutOfRange(SatoTateError):
    pass


class ConstructionFailure(SatoTateError):
    pass


class DomainError(SatoTateError, ValueError):
    pass


class FormGateError(SatoTateError):
    pass


class HypothesisError(SatoTateError, ValueError):
    pass


class ModeRangeError(SatoTateError, ValueError):
    pass


class RangeError(SatoTateError, ValueError):
    pass


class InvalidReduction(SatoTateError, ValueError):
    pass


class UnsupportedForm(SatoTateError):
    pass
