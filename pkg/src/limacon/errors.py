"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line: 2 for bad
input (validation), 1 for numerical failures such as singular arcs.
"""


class LimaconError(Exception):
    exit_code = 1


class ValidationError(LimaconError, ValueError):
    exit_code = 2


class NumericalError(LimaconError, ArithmeticError):
    exit_code = 1


# limacon_core
class SingularEndpoint(NumericalError):
    """The xi = pi element is a cusp (|mu| = 1)."""


class UnitRatio(ValidationError):
    pass


class NoIntersection(NumericalError):
    pass


class DegenerateMu(ValidationError):
    pass


# diffgeo
class SingularPoint(NumericalError):
    pass


class NotSpiralRegime(ValidationError):
    pass


# conic_inversion
class PoleAtCenter(NumericalError):
    pass


class OppositeWinding(ValidationError):
    pass


class InversionPoleOnCurve(NumericalError):
    pass


# normalized_ref
class UnitKappa(ValidationError):
    pass


class NoCorrespondence(NumericalError):
    pass


# transition_solver
class NotConcentric(ValidationError):
    pass


class DegenerateEqualCircles(ValidationError):
    pass


class RatioMinusOne(ValidationError):
    pass
