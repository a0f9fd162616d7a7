"""Exception hierarchy shared by every module."""


class SupercongError(Exception):
    """Base class; ``code`` is the short name written into skipped reports."""

    code = "Error"


class NotInvertible(SupercongError, ZeroDivisionError):
    code = "NotInvertible"


class NotPIntegral(SupercongError, ValueError):
    code = "NotPIntegral"


class NotAUnit(SupercongError, ValueError):
    code = "NotAUnit"


class Supersingular(SupercongError):
    code = "Supersingular"


class NotOrdinary(SupercongError):
    code = "NotOrdinary"


class BadReduction(SupercongError):
    code = "BadReduction"


class DegenerateLambda(SupercongError, ValueError):
    code = "DegenerateLambda"


class NotReversible(SupercongError, ValueError):
    code = "NotReversible"


class CompositionAtUnit(SupercongError, ValueError):
    code = "CompositionAtUnit"


class IndexOutOfRange(SupercongError, IndexError):
    code = "IndexOutOfRange"


class TooLarge(SupercongError, ValueError):
    code = "TooLarge"


class PTooSmall(SupercongError, ValueError):
    code = "PTooSmall"


class NoFourthRoot(SupercongError):
    code = "NoFourthRoot"


class PrecisionLoss(SupercongError, ArithmeticError):
    code = "PrecisionLoss"


class ParseError(SupercongError, ValueError):
    code = "ParseError"
