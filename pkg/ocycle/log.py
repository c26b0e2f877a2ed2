"""Tagged console logging: `[info]`, `[warn]`, `[ok]` lines on stderr."""

from __future__ import annotations

import sys
from typing import Optional

from .config import get_settings


def _emit(level: str, msg: str, tag: Optional[str]) -> None:
    prefix = f"[{level}] [{tag}] " if tag else f"[{level}] "
    print(f"{prefix}{msg}", file=sys.stderr)


def info(msg: str, tag: Optional[str] = None) -> None:
    if get_settings().quiet:
        return
    _emit("info", msg, tag)


def warn(msg: str, tag: Optional[str] = None) -> None:
    _emit("warn", msg, tag)


def ok(msg: str, tag: Optional[str] = None) -> None:
    if get_settings().quiet:
        return
    _emit("ok", msg, tag)
