"""Small thread-pool helper used for embarrassingly parallel sweeps."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, TypeVar

from .config import get_settings

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None) -> List[R]:
    """Apply `fn` to every item and return results in input order."""
    max_workers = workers or get_settings().workers
    if max_workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    results: List[Optional[R]] = [None] * len(items)
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        future_map = {executor.submit(fn, item): idx for idx, item in enumerate(items)}
        for fut in as_completed(future_map):
            results[future_map[fut]] = fut.result()
    return results  # type: ignore[return-value]
