"""Exception hierarchy.

Every error carries a short machine tag (``kind``) that the CLI prints as
``reason=<kind>``.
"""


class HassegenError(Exception):
    kind = "error"


class UnsupportedField(HassegenError):
    kind = "unsupported-field"


class FieldMismatch(HassegenError):
    kind = "field-mismatch"


class FFZeroDivision(HassegenError, ZeroDivisionError):
    kind = "division-by-zero"


class OffCurvePoint(HassegenError):
    kind = "off-curve-point"


class HasseBoundViolation(HassegenError):
    kind = "hasse-bound-violation"


class InvalidCurve(HassegenError):
    kind = "invalid-curve"


class InvalidHom(HassegenError):
    kind = "invalid-hom"


class InvalidDomain(HassegenError):
    kind = "invalid-domain"


class FiberSumMismatch(HassegenError):
    kind = "fiber-sum-mismatch"


class UnsupportedCover(HassegenError):
    kind = "unsupported-cover"


class NotAdmissible(HassegenError):
    kind = "not-admissible"


class UnitsUnavailable(HassegenError):
    kind = "unit-norm-data"


class InconsistentTwist(HassegenError):
    kind = "inconsistent-twist"


class NoSplittingPoint(HassegenError):
    kind = "no-splitting-point"


class NotApplicable(HassegenError):
    kind = "not-applicable"


class UnsupportedGroup(HassegenError):
    kind = "unsupported-group"
