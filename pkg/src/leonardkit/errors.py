"""Exception hierarchy shared by every module of the package."""


class LeonardError(Exception):
    """Base class for all errors raised by leonardkit."""


class DivisionByZero(LeonardError, ZeroDivisionError):
    pass


class MismatchedField(LeonardError, ValueError):
    pass


class InvalidFieldSpec(LeonardError, ValueError):
    pass


class ShapeMismatch(LeonardError, ValueError):
    pass


class NotMultiplicityFree(LeonardError):
    pass


class CaseConstraintViolated(LeonardError, ValueError):
    pass


class InfeasibleParameters(LeonardError):
    """The parameters evaluate to an array that fails one of (PA1)-(PA5).

    ``report`` carries the full validation report of the offending array.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidParameterArray(LeonardError, ValueError):
    pass


class ZeroScale(LeonardError, ValueError):
    pass


class DegenerateBasis(LeonardError):
    pass


class ZeroTrace(LeonardError):
    pass


class DiameterTooSmall(LeonardError, ValueError):
    pass


class EndpointOutOfRange(LeonardError, ValueError):
    pass


class NotAdmissible(LeonardError):
    pass


class FreeParameterConstraintViolated(LeonardError, ValueError):
    pass


class NotADescendent(LeonardError):
    pass


class MiddleSystemMismatch(LeonardError, ValueError):
    pass


class HypothesisViolated(LeonardError):
    """One of the hypotheses of the induction theorem fails.

    ``which`` names the failing hypothesis: ``"i"``, ``"ii"``, ``"iii"`` or
    ``"decomposition"``.
    """

    def __init__(self, which, message):
        super().__init__(f"hypothesis ({which}) violated: {message}")
        self.which = which


class DenominatorVanishes(LeonardError, ZeroDivisionError):
    pass


class ConfigParse(LeonardError, ValueError):
    pass
