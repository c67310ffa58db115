"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class QuadMapError(Exception):
    """Base class for all package errors."""


class NegativeInput(QuadMapError, ValueError):
    pass


class InexactValue(QuadMapError, ValueError):
    """A value (usually a square root) is not representable in the exact field."""


class DegreeMismatch(QuadMapError, ValueError):
    pass


class DimensionMismatch(QuadMapError, ValueError):
    pass


class NotSymmetric(QuadMapError, ValueError):
    pass


class NotOrthogonal(QuadMapError, ValueError):
    pass


class NotSpherical(QuadMapError, ValueError):
    """|F(x)|^2 - |x|^4 is not identically zero.

    ``monomial`` and ``coefficient`` name one offending term of the remainder.
    """

    def __init__(self, message, remainder=None, monomial=None, coefficient=None):
        super().__init__(message)
        self.remainder = remainder
        self.monomial = monomial
        self.coefficient = coefficient


class ConstantMap(QuadMapError, ValueError):
    pass


class ConditionViolated(QuadMapError):
    def __init__(self, message, relation: int, indices: tuple = ()):
        super().__init__(message)
        self.relation = relation
        self.indices = indices


class PathDisagreement(QuadMapError):
    pass


class NotProperBiharmonic(QuadMapError):
    pass


class ExactRotationUnavailable(QuadMapError):
    pass


class RadiusBelowBound(QuadMapError):
    pass


class NotInClaimedSphere(QuadMapError):
    pass


class UnknownName(QuadMapError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class LambdaOutOfRange(QuadMapError, ValueError):
    pass


class InexactLambda(InexactValue):
    pass


class InnerNotHarmonic(QuadMapError):
    pass


class InnerEnergyNotConstant(QuadMapError):
    pass


class NotOnSphere(QuadMapError, ValueError):
    pass
