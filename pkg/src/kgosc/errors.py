"""Exception hierarchy shared by all kgosc modules."""


class KGOscError(Exception):
    """Base class for every error raised by this package."""


class NonPositiveInput(KGOscError, ValueError):
    pass


class ThetaOutOfRange(KGOscError, ValueError):
    pass


class NegativeRadialIndex(KGOscError, ValueError):
    pass


class ZeroAngularMomentumInGUP(KGOscError, ValueError):
    pass


class DegenerateDenominator(KGOscError, ZeroDivisionError):
    pass


class ImaginaryEnergy(KGOscError, ArithmeticError):
    """Squared energy came out negative: the level is outside the bound-state regime."""


class BetaZero(KGOscError, ValueError):
    pass


class NonPositiveMomentum(KGOscError, ValueError):
    pass


class QuadratureNonConvergent(KGOscError, RuntimeError):
    pass


class DomainContainsPole(KGOscError, ValueError):
    pass


class DomainTooSmall(KGOscError, ValueError):
    pass


class BisectionStall(KGOscError, RuntimeError):
    pass


class GridMismatch(KGOscError, ValueError):
    pass


class GridTooCoarse(UserWarning):
    """Warning: adjacent sign changes are too close together to trust the node count."""
