"""Numerical verification of surfaces from the supersymmetric CP^{N-1} sigma model."""

from supercurv.errors import (
    ConfigError,
    MismatchError,
    ParityError,
    ResampleExhaustedError,
    SingularJetError,
    SupercurvError,
    TruncationError,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "MismatchError",
    "ParityError",
    "ResampleExhaustedError",
    "SingularJetError",
    "SupercurvError",
    "TruncationError",
    "__version__",
]
