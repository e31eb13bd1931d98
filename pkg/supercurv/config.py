"""Defaults, tolerances and the validated run configuration."""

from __future__ import annotations

import os
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator, model_validator

SINGULAR_EPS = 1e-12
DEFAULT_SEED = 42
DEFAULT_SAMPLES = 10
ANNULUS = (0.2, 2.0)
MAX_RESAMPLES = 3
REPORT_VERSION = "1.0"

SEED_ENV = "SUPERCURV_SEED"
LOG_LEVEL_ENV = "SUPERCURV_LOG_LEVEL"

COMMANDS = ("curvature", "el", "gsv-uniqueness", "prop1", "prop2", "g2n", "algebra", "sphere", "suite")


class Tolerances(BaseModel):
    residual: float = 1e-9
    curvature_rel: float = 1e-8
    soul: float = 1e-8
    negative: float = 1e-4
    algebra: float = 1e-12
    embedding: float = 1e-10
    determinant: float = 1e-12
    conformal: float = 1e-10
    projector: float = 1e-10
    cp1: float = 1e-10


def auto_orders(n: int) -> tuple[int, int]:
    # P_+^{N-1}, metric, curvature's d+d- ln and the conservation law each eat one order
    return (n + 3, n + 3)


class RunConfig(BaseModel):
    command: Literal["curvature", "el", "gsv-uniqueness", "prop1", "prop2", "g2n", "algebra", "sphere", "suite"]
    n_values: list[int] = Field(default_factory=lambda: [3])
    k_values: list[int] | None = None  # None means every k in 0..N-1
    curve: Literal["veronese", "gsv", "random"] = "veronese"
    xi: list[complex] = Field(default_factory=lambda: [1.0])
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    jet_orders: tuple[int, int] | Literal["auto"] = "auto"
    tolerances: Tolerances = Field(default_factory=Tolerances)
    output_format: Literal["json", "csv", "table"] = "table"
    output_path: str | None = None
    workers: int = 1
    timing: bool = False

    @field_validator("n_values")
    @classmethod
    def _check_n(cls, value: list[int]) -> list[int]:
        if not value or any(n < 2 for n in value):
            raise ValueError("N must be at least 2")
        return value

    @field_validator("samples", "workers")
    @classmethod
    def _check_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be a positive integer")
        return value

    @field_validator("seed")
    @classmethod
    def _check_seed(cls, value: int) -> int:
        if not 0 <= value < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        return value

    @field_validator("jet_orders")
    @classmethod
    def _check_orders(cls, value):
        if value != "auto" and min(value) < 0:
            raise ValueError("jet orders must be non-negative")
        return value

    @model_validator(mode="after")
    def _check_k(self) -> RunConfig:
        if self.k_values is not None:
            for n in self.n_values:
                bad = [k for k in self.k_values if not 0 <= k <= n - 1]
                if bad:
                    raise ValueError(f"k values {bad} out of range for N={n}")
        return self

    def orders_for(self, n: int) -> tuple[int, int]:
        return auto_orders(n) if self.jet_orders == "auto" else tuple(self.jet_orders)

    def ks_for(self, n: int) -> list[int]:
        return list(range(n)) if self.k_values is None else list(self.k_values)


def resolve_seed(cli_seed: int | None) -> int:
    """Seed precedence: --seed, then SUPERCURV_SEED (also read from .env), then 42."""
    if cli_seed is not None:
        return cli_seed
    load_dotenv()
    raw = os.getenv(SEED_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_SEED
    return int(raw.strip())


def default_log_level() -> str:
    load_dotenv()
    return os.getenv(LOG_LEVEL_ENV, "INFO")
