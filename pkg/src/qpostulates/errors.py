"""Exception types raised across the package."""


class PostulateError(ValueError):
    """Base class for all domain errors in this package."""


class HypercomplexAmplitude(PostulateError):
    """A complex-only operation received an amplitude with j or k components."""


class NonUnitaryPhase(PostulateError):
    """A phase shift carried a nonzero scalar part."""


class DegenerateNormalization(PostulateError):
    """The second-order interference sum used to normalise kappa vanished."""


class ZeroPathPower(PostulateError):
    """A single-path photon number was not strictly positive."""


class ZeroDenominator(PostulateError):
    """A Glauber statistic had a vanishing denominator."""

    def __init__(self, names):
        self.names = tuple(names)
        super().__init__(f"zero denominator for {', '.join(self.names)}")


class EmptySamples(PostulateError):
    """A homodyne sample set contained no samples."""


class DegenerateSqueezing(PostulateError):
    """The variance channel was requested with no squeezing (f = 1)."""


class InsufficientData(PostulateError):
    """Fewer than two runs survived filtering."""


class ConfigError(PostulateError):
    """An experiment configuration was malformed or out of range."""
