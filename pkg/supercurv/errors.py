"""Exception hierarchy shared by every supercurv module."""

from __future__ import annotations


class SupercurvError(Exception):
    """Base class for all supercurv failures."""


class TruncationError(SupercurvError):
    """A derivative was requested beyond the available jet order."""


class MismatchError(SupercurvError):
    """Operands disagree on base point, truncation orders, algebra or shape."""


class SingularJetError(SupercurvError):
    """Inversion or logarithm of a jet whose value at the base point vanishes."""

    def __init__(self, message: str, base_point: complex | None = None):
        super().__init__(message)
        self.base_point = base_point


class ParityError(SupercurvError):
    """An operation received a supernumber of the wrong Grassmann parity."""


class ConfigError(SupercurvError):
    """Invalid run configuration or curve specification."""


class ResampleExhaustedError(SupercurvError):
    """Too many consecutive sample points landed on a singularity."""
