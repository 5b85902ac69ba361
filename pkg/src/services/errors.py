class HahnSystemError(Exception):
    """Base class for the errors raised by the numerical services.
    """


class GammaPoleError(HahnSystemError):
    """Gamma function evaluated at a nonpositive integer.
    """


class ParameterRegimeError(HahnSystemError):
    """Parameters outside the regime the operation is defined for.
    """


class ParameterDegeneracyError(HahnSystemError):
    """A denominator of a matrix element vanishes for the given parameters.
    """


class IndexRangeError(HahnSystemError):
    """Polynomial degree or argument index exceeds the family size.
    """


class DegreeTooLargeError(HahnSystemError):
    """Direct hypergeometric summation would overflow.
    """


class SizeMismatchError(HahnSystemError):
    """Matrices of different dimensions were combined.
    """


class DomainError(HahnSystemError):
    """Coordinate outside the domain of a coordinate map.
    """


class QuadratureError(HahnSystemError):
    """Quadrature did not reach the requested tolerance.
    """

    def __init__(self, message, achieved, tolerance):
        super().__init__(f"{message} (achieved {achieved:.3e}, tolerance {tolerance:.3e})")
        self.achieved = achieved
        self.tolerance = tolerance


class LinearityError(HahnSystemError):
    """Reconstructed potential is not linear in the basis coordinate.
    """


class InsufficientPointsError(HahnSystemError):
    """Too few valid grid points for a least squares fit.
    """


class NumericalError(HahnSystemError):
    """Result failed a numerical sanity check.
    """
