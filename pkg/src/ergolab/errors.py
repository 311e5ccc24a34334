"""Exception types shared across the library."""


class ErgolabError(Exception):
    """Base class for all library errors."""


class InvalidPoint(ErgolabError):
    """A point's variant does not match the system acting on it."""


class InvalidObservable(ErgolabError):
    """An observable is incompatible with the point it is evaluated at."""


class NonErgodicRotation(ErgolabError):
    """A finite rotation whose step does not generate its group."""


class UndecidableSpectrum(ErgolabError):
    """A spectral intersection query that cannot be certified either way."""


class ConfigError(ErgolabError):
    """Invalid experiment configuration; carries the offending field path."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class HypothesisRefused(ConfigError):
    """An experiment's mathematical hypotheses fail for the configured inputs."""
