"""Exception hierarchy shared by every awcalc module."""


class AwError(Exception):
    """Base class for computation errors raised by awcalc."""

    exit_code = 1


class ZeroFunction(AwError, ValueError):
    exit_code = 10


class ZeroDenominator(AwError, ZeroDivisionError):
    exit_code = 11


class ZeroDivisor(AwError, ZeroDivisionError):
    exit_code = 12


class GuardViolation(AwError, ValueError):
    """A query point lies inside the shift-invertibility guard radius."""

    exit_code = 13


class QuadratureDegenerate(AwError, ArithmeticError):
    exit_code = 14


class CurveInHypersurface(AwError, ValueError):
    exit_code = 15


class BadArity(AwError, ValueError):
    exit_code = 16


class TooLarge(AwError, ValueError):
    exit_code = 17


class NotEnoughFactors(AwError, ValueError):
    exit_code = 18


class TooFew(AwError, ValueError):
    exit_code = 19


class HypothesisFailed(AwError):
    exit_code = 3


class DependentCurve(AwError, ValueError):
    exit_code = 20


class PositionFailed(AwError, ValueError):
    exit_code = 21


class PositionHeuristicOnly(UserWarning):
    """Position of hypersurfaces was only checked by sampling."""


class ExprSyntaxError(AwError, SyntaxError):
    """Malformed polynomial expression; ``position`` is the byte offset."""

    exit_code = 64

    def __init__(self, message, position, text=""):
        super().__init__(f"{message} at offset {position}")
        self.position = position
        self.text = text


class ExponentError(ExprSyntaxError):
    """Exponent that is negative, fractional or otherwise not a natural number."""
