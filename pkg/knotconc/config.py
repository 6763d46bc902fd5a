"""Configuration helpers and constants for the knotconc engine."""

from __future__ import annotations

import logging
import os
from pathlib import Path

from dotenv import load_dotenv

# Default ranges for the reproduction suites; together they cover every
# closed-form value quoted for the knot families.
DEFAULT_SUITE_RANGES: dict[str, dict[str, tuple[int, int]]] = {
    "thm1": {"n": (1, 20)},
    "thm2": {"k": (1, 10), "l": (1, 10)},
    "remark": {"k": (1, 20)},
    "bcg": {"n": (1, 50)},
    "lens": {"n": (1, 100)},
    "torus": {"k": (1, 50)},
    "cable": {"p": (2, 9)},
}

DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_PARTITION_LIMIT = 12
DEFAULT_SIGNATURE_BOUND = 3
JSON_SCHEMA_VERSION = 1


def init_environment() -> logging.Logger:
    """Load environment variables and configure base logging."""
    load_dotenv()
    logging.basicConfig(
        level=os.getenv("LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
        format="%(levelname)s %(message)s",
    )
    return logging.getLogger("knotconc")


def _int_env(key: str, default: int, minimum: int) -> int:
    raw = os.getenv(key)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{key} must be an integer, got {raw!r}") from exc
    if value < minimum:
        raise ValueError(f"{key} must be >= {minimum}, got {value}")
    return value


def get_atoms_path() -> Path | None:
    raw = os.getenv("KNOTCONC_ATOMS")
    return Path(raw) if raw else None


def get_partition_limit() -> int:
    return _int_env("KNOTCONC_PARTITION_LIMIT", DEFAULT_PARTITION_LIMIT, 1)


def get_signature_bound() -> int:
    return _int_env("KNOTCONC_SIGNATURE_BOUND", DEFAULT_SIGNATURE_BOUND, 1)


def parse_range(text: str) -> tuple[int, int]:
    """Parse an inclusive ``a..b`` (or single ``a``) range of positive integers."""
    parts = text.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError as exc:
        raise ValueError(f"Invalid range: {text!r} (expected a..b)") from exc
    if lo < 1 or hi < lo:
        raise ValueError(f"Invalid range: {text!r} (need 1 <= a <= b)")
    return lo, hi
