"""Exception hierarchy shared by all evaluators."""


class MarcumError(Exception):
    """Base class for every error raised by :mod:`marcumq`."""


class DomainError(MarcumError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ConvergenceError(MarcumError, RuntimeError):
    """A series, continued fraction or iteration failed to settle within its cap."""


class ToleranceError(MarcumError, RuntimeError):
    """A requested error target could not be certified."""


class InvalidRegionError(MarcumError, ValueError):
    """A bound was requested outside the region where its formula is defined."""


class NoInflectionError(MarcumError, ValueError):
    """No unique inflection point exists for the requested parameters."""
