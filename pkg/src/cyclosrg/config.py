from __future__ import annotations

import os
from dataclasses import dataclass, field

DEFAULT_ENUMERATION_CAP = 2**28
DEFAULT_ORACLE_CAP = 4096
CAP_ENV_VAR = "CYCLOSRG_CAP"


def default_enumeration_cap() -> int:
    """Enumeration cap, honouring the ``CYCLOSRG_CAP`` environment variable."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_ENUMERATION_CAP
    cap = int(raw)
    if cap <= 0:
        raise ValueError(f"{CAP_ENV_VAR} must be positive, got {cap}")
    return cap


def _default_workers() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class RunConfig:
    enumeration_cap: int = field(default_factory=default_enumeration_cap)
    oracle_cap: int = DEFAULT_ORACLE_CAP
    workers: int = field(default_factory=_default_workers)
    output_format: str = "text"

    def __post_init__(self):
        if self.enumeration_cap <= 0 or self.oracle_cap <= 0:
            raise ValueError("caps must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.output_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")
