"""Exception hierarchy. Every error raised by the package derives from KaehlerError."""


class KaehlerError(Exception):
    pass


class DegenerateGram(KaehlerError):
    """The Gram matrix of a basis under the chosen bilinear form is singular."""


class SingularMatrix(KaehlerError):
    pass


class BadDimension(KaehlerError):
    pass


class SymmetryConflict(KaehlerError):
    pass


class BianchiViolation(KaehlerError):
    pass


class BadThetaSymmetry(KaehlerError):
    pass


class NotKaehler(KaehlerError):
    pass


class WrongKind(KaehlerError):
    pass


class NoSolution(KaehlerError):
    """An exact solve that must be consistent was not. Internal invariant failure."""


class SingularMetric(KaehlerError):
    pass


class NotAUnit(KaehlerError):
    pass


class NotInKernel(KaehlerError):
    pass


class LeadingCoefficientDegenerate(KaehlerError):
    pass


class UnknownFixture(KaehlerError):
    pass


class FormatError(KaehlerError):
    """Malformed input file or value."""
