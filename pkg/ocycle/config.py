"""Runtime knobs for ocycle.

Defaults live here as module constants; every one of them can be overridden
from the environment (or a `.env` file next to the repository root) so CI can
tighten budgets without touching code.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

ROOT = Path(__file__).resolve().parent.parent
DEFAULT_ENV_FILE = ROOT / ".env"

ELEMENT_CAP = 10_000_000
DIMENSION_CAP = 16
CHAIN_STEP_CAP = 10_000
MAX_FIELD_DEGREE = 4
PRODUCT_TERMS = 96
CHUNK_SIZE = 65_536
WORKERS = min(8, os.cpu_count() or 1)


def load_env(path: Path = DEFAULT_ENV_FILE) -> List[Tuple[int, str]]:
    """Fill unset variables from a .env file; returns (line number, text) of lines it could not read.

    Accepts `KEY=value`, quoted values and shell-style `export KEY=value`.
    Variables already present in the environment always win.
    """
    skipped: List[Tuple[int, str]] = []
    if not path.exists():
        return skipped
    for lineno, raw_line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("export "):
            line = line[len("export ") :].lstrip()
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key.isidentifier():
            skipped.append((lineno, raw_line))
            continue
        value = value.strip()
        if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
            value = value[1:-1]
        os.environ.setdefault(key, value)
    return skipped


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        return default
    return value if value > 0 else default


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


@dataclass(frozen=True)
class Settings:
    element_cap: int
    dimension_cap: int
    chain_step_cap: int
    max_field_degree: int
    product_terms: int
    chunk_size: int
    workers: int
    quiet: bool


def get_settings(env_file: Optional[Path] = None) -> Settings:
    """Snapshot of the effective settings (re-read on every call)."""
    if env_file is not None:
        load_env(env_file)
    return Settings(
        element_cap=_env_int("OCYCLE_ELEMENT_CAP", ELEMENT_CAP),
        dimension_cap=DIMENSION_CAP,
        chain_step_cap=_env_int("OCYCLE_CHAIN_STEP_CAP", CHAIN_STEP_CAP),
        max_field_degree=MAX_FIELD_DEGREE,
        product_terms=_env_int("OCYCLE_PRODUCT_TERMS", PRODUCT_TERMS),
        chunk_size=_env_int("OCYCLE_CHUNK_SIZE", CHUNK_SIZE),
        workers=_env_int("OCYCLE_WORKERS", WORKERS),
        quiet=_env_flag("OCYCLE_QUIET"),
    )
