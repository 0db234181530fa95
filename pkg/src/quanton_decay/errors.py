"""Exception hierarchy shared by every module of the package."""


class QuantonDecayError(Exception):
    """Base class for all domain errors raised by quanton_decay."""


class VelocityNotSubluminal(QuantonDecayError, ValueError):
    pass


class AxisNotNormalized(QuantonDecayError, ValueError):
    pass


class HyperplanesNotParallel(QuantonDecayError, ValueError):
    pass


class EmptyInput(QuantonDecayError, ValueError):
    pass


class InvalidEta(QuantonDecayError, ValueError):
    pass


class InvalidParameters(QuantonDecayError, ValueError):
    pass


class NonMonotoneGrid(QuantonDecayError, ValueError):
    pass


class NegativeDensity(QuantonDecayError, ValueError):
    pass


class NegativeMass(QuantonDecayError, ValueError):
    pass


class SpacelikeMomentumRequired(QuantonDecayError, ValueError):
    pass


class SupportTouchesZeroMass(QuantonDecayError, ValueError):
    pass


class TailNotDecaying(QuantonDecayError, ArithmeticError):
    """The survival probability does not decay fast enough to integrate.

    Raised for sharp (stable) spectra and when the spectral grid is too
    coarse to follow the amplitude out to the required time.
    """
