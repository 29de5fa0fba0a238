"""Exception types shared across the package."""


class SplitinvError(ValueError):
    """Base class for rejection of invalid inputs."""


class CoefficientError(SplitinvError):
    """Invalid coefficient arithmetic (zero inverse, char-2 field, ...)."""


class PlaceError(SplitinvError):
    """Invalid local place or quadratic extension data."""


class RootDatumError(SplitinvError):
    """Invalid root datum, automorphism, or Weyl input."""


class ADataError(SplitinvError):
    """a-data violating one of its defining conditions."""


class DescentError(SplitinvError):
    """Galois descent datum that is not a homomorphism or incompatible."""


class RealizationError(SplitinvError):
    """Matrix realization inputs that break the required conjugation setup."""


class FactorError(SplitinvError):
    """Invalid endoscopic sign datum or factor-expression input."""
