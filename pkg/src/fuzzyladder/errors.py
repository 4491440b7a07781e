"""Exception hierarchy."""


class FuzzyLadderError(Exception):
    """Base class for all library errors."""


class InvalidSpec(FuzzyLadderError, ValueError):
    pass


class DeltaHasNoDensity(FuzzyLadderError, ValueError):
    pass


class InvalidTolerance(FuzzyLadderError, ValueError):
    pass


class QuadratureNonConvergence(FuzzyLadderError, ArithmeticError):
    """Adaptive quadrature hit its panel budget before meeting the tolerance.

    ``value`` and ``achieved_error`` hold the best estimate reached so that
    callers can still report it.
    """

    def __init__(self, message, value=None, achieved_error=None):
        super().__init__(message)
        self.value = value
        self.achieved_error = achieved_error


class UnsupportedAnalyticKind(FuzzyLadderError, ValueError):
    pass


class DimTooSmall(FuzzyLadderError, ValueError):
    pass


class DimMismatch(FuzzyLadderError, ValueError):
    pass


class ZeroRatio(FuzzyLadderError, ValueError):
    pass


class NonPositiveRatio(FuzzyLadderError, ValueError):
    pass


class DegenerateC(FuzzyLadderError, ValueError):
    pass


class NonConvergentSeries(FuzzyLadderError, ArithmeticError):
    pass


class TailTooFat(FuzzyLadderError, ArithmeticError):
    pass


class TruncationOverflow(FuzzyLadderError, ValueError):
    pass


class NotHermitian(FuzzyLadderError, ValueError):
    pass


class DegreeTooLarge(FuzzyLadderError, ValueError):
    pass


class DisplacementTooLarge(FuzzyLadderError, ValueError):
    pass


class NonPositiveOmega(FuzzyLadderError, ValueError):
    pass
