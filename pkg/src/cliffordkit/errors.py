"""Exception hierarchy. Everything raised on bad input derives from CliffordError."""


class CliffordError(Exception):
    pass


class MismatchedSpace(CliffordError, ValueError):
    pass


class MismatchedAlgebra(CliffordError, ValueError):
    pass


class NotAVector(CliffordError, ValueError):
    pass


class NotABivector(CliffordError, ValueError):
    pass


class NotEven(CliffordError, ValueError):
    pass


class DegenerateForm(CliffordError, ValueError):
    pass


class OddDimension(CliffordError, ValueError):
    pass


class NonSquareForm(CliffordError, ValueError):
    """A form value whose magnitude is not a rational square cannot be
    normalised without leaving the Gaussian rationals."""


class SeriesDiverged(CliffordError, ArithmeticError):
    pass


class NonInvertible(CliffordError, ArithmeticError):
    pass


class NotClosed(CliffordError, ValueError):
    pass


class IndexOutOfRange(CliffordError, IndexError):
    pass


class WrongSignature(CliffordError, ValueError):
    pass


class RepeatedIndex(CliffordError, ValueError):
    pass


class BadGrading(CliffordError, ValueError):
    pass


class BadIndexSet(CliffordError, ValueError):
    pass


class NotCalibrated(CliffordError, RuntimeError):
    pass


class DimensionTooLarge(CliffordError, ValueError):
    pass


class DimensionMismatch(CliffordError, ValueError):
    pass


class BadMatrixFile(CliffordError, ValueError):
    pass


class BadSignature(CliffordError, ValueError):
    pass


class InconsistentSystem(CliffordError, ArithmeticError):
    pass
