"""Exception hierarchy.

Every domain error derives from :class:`EclrcError`; the CLI turns these into
exit code 1 plus a JSON error object whose ``error`` field is the class name.
"""


class EclrcError(Exception):
    pass


# finite fields
class NotPrime(EclrcError, ValueError):
    pass


class FieldTooLarge(EclrcError, ValueError):
    pass


class FieldMismatch(EclrcError, ValueError):
    pass


class DivisionByZero(EclrcError, ZeroDivisionError):
    pass


# curves
class SingularCurve(EclrcError, ValueError):
    pass


class PointNotOnCurve(EclrcError, ValueError):
    pass


class StructureContradiction(EclrcError, ArithmeticError):
    pass


class NoMaximalCurveFound(EclrcError, LookupError):
    pass


# function field
class PrecisionCapExceeded(EclrcError, ArithmeticError):
    pass


class ZeroFunction(EclrcError, ValueError):
    pass


class NonRationalSupport(EclrcError, ValueError):
    pass


# automorphisms
class FieldTooLargeForScan(EclrcError, ValueError):
    pass


class NotASubgroup(EclrcError, ValueError):
    pass


# codes
class NoSuchFunction(EclrcError, LookupError):
    pass


class InvarianceFailure(EclrcError, ArithmeticError):
    pass


class DependenceDetected(EclrcError, ArithmeticError):
    pass


class NotEnoughFibers(EclrcError, ValueError):
    def __init__(self, msg, available=None):
        super().__init__(msg)
        self.available = available


class ParameterViolation(EclrcError, ValueError):
    pass


class MinorSingular(EclrcError, ArithmeticError):
    pass


class TooManyErasuresInGroup(EclrcError, ValueError):
    pass


class NotErased(EclrcError, ValueError):
    pass


class Undecodable(EclrcError, ValueError):
    pass


class SearchSpaceTooLarge(EclrcError, ValueError):
    pass
