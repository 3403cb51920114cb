"""Runtime settings shared by the numeric fallbacks and the oracle."""

import os
from dataclasses import dataclass

ENV_PRECISION = "FUNKSPHERE_PRECISION"
DEFAULT_PRECISION = 30
MIN_PRECISION = 15


@dataclass(frozen=True)
class Settings:
    precision: int = DEFAULT_PRECISION
    # extra digits the oracle carries on top of `precision`
    oracle_extra_digits: int = 10

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise ValueError(f"precision must be >= {MIN_PRECISION}, got {self.precision}")


def default_precision() -> int:
    raw = os.environ.get(ENV_PRECISION)
    if raw is None:
        return DEFAULT_PRECISION
    value = int(raw)
    if value < MIN_PRECISION:
        raise ValueError(f"{ENV_PRECISION} must be >= {MIN_PRECISION}")
    return value


def resolve_precision(precision=None) -> int:
    if precision is None:
        return default_precision()
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION}, got {precision}")
    return precision
