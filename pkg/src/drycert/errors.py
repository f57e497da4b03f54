"""Exception hierarchy shared by the engine modules."""


class DryCertError(Exception):
    """Base class for all engine errors."""


class DimensionMismatch(DryCertError, ValueError):
    """Two classes (or a class and a surface) disagree on Picard rank."""


class NotDryFeasible(DryCertError, ValueError):
    """phi - (N/2) c1 is not ample, so no admissible b exists."""


class ParityError(DryCertError, ValueError):
    """Spectral data (n, eta, 2*lambda) violates the integrality rules."""


class PolarizationError(DryCertError, ValueError):
    """Preconditions of the polarization construction fail."""


class UnsupportedCase(DryCertError, ValueError):
    """The (N, base) pair has no construction in the case table."""
