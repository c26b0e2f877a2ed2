"""Integer partitions with cached statistics and constrained enumeration.

Usage:
    from ocycle.partitions import make_partition, iter_partitions, odd_parts_even_mult
    lam = make_partition([5, 4, 4, 1])
    lam.n, lam.l, lam.o          # 15, 4, 2
    list(iter_partitions(4, odd_parts_even_mult))
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InputError, NonPositivePart

Predicate = Callable[["Partition"], bool]


@dataclass(frozen=True, order=True)
class Partition:
    """A partition stored as a nonincreasing tuple of positive parts."""

    parts: Tuple[int, ...] = ()

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    @cached_property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def l(self) -> int:  # noqa: E743 - standard name for the number of parts
        return len(self.parts)

    @cached_property
    def o(self) -> int:
        return sum(1 for p in self.parts if p % 2)

    @cached_property
    def multiplicities(self) -> Dict[int, int]:
        mult: Dict[int, int] = {}
        for p in self.parts:
            mult[p] = mult.get(p, 0) + 1
        return mult

    def m(self, i: int) -> int:
        return self.multiplicities.get(i, 0)

    @cached_property
    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        cols = [sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)]
        return Partition(tuple(cols))

    @cached_property
    def n(self) -> int:
        # n(λ) = Σ C(λ'_i, 2)
        return sum(c * (c - 1) // 2 for c in self.conjugate.parts)

    def column(self, j: int) -> int:
        """λ'_j, 1-based; 0 past the first row."""
        cols = self.conjugate.parts
        return cols[j - 1] if 1 <= j <= len(cols) else 0


@dataclass(frozen=True)
class PartitionStats:
    size: int
    l: int  # noqa: E741
    o: int
    n: int
    multiplicities: Tuple[Tuple[int, int], ...]
    conjugate: Partition


EMPTY = Partition(())


def make_partition(parts: Iterable[int]) -> Partition:
    values = [int(p) for p in parts]
    for p in values:
        if p < 1:
            raise NonPositivePart(f"partition part must be >= 1, got {p}")
    return Partition(tuple(sorted(values, reverse=True)))


def parse_partition(text: str) -> Partition:
    """Parse "[5,4,4,1]" (brackets optional, "[]" for the empty partition)."""
    body = text.strip().strip("[]()").strip()
    if not body:
        return EMPTY
    try:
        return make_partition(int(tok) for tok in body.replace(" ", "").split(",") if tok)
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"cannot parse partition {text!r}") from exc


def from_columns(columns: Sequence[int]) -> Partition:
    """Partition whose conjugate is the given nonincreasing column sequence."""
    cols = [c for c in columns if c > 0]
    if not cols:
        return EMPTY
    return Partition(tuple(cols)).conjugate


def stats(lam: Partition) -> PartitionStats:
    return PartitionStats(
        size=lam.size,
        l=lam.l,
        o=lam.o,
        n=lam.n,
        multiplicities=tuple(sorted(lam.multiplicities.items())),
        conjugate=lam.conjugate,
    )


def odd_parts_even_mult(lam: Partition) -> bool:
    return all(c % 2 == 0 for p, c in lam.multiplicities.items() if p % 2)


def all_mults_even(lam: Partition) -> bool:
    return all(c % 2 == 0 for c in lam.multiplicities.values())


def even_length(lam: Partition) -> bool:
    return lam.l % 2 == 0


def _descending(size: int, cap: int) -> Iterator[List[int]]:
    if size == 0:
        yield []
        return
    for first in range(min(size, cap), 0, -1):
        for rest in _descending(size - first, first):
            yield [first] + rest


def iter_partitions(size: int, predicate: Optional[Predicate] = None) -> Iterator[Partition]:
    """Partitions of `size` in lexicographically descending order, filtered."""
    if size < 0:
        return
    for parts in _descending(size, size):
        lam = Partition(tuple(parts))
        if predicate is None or predicate(lam):
            yield lam


def iter_partitions_up_to(max_size: int, predicate: Optional[Predicate] = None) -> Iterator[Partition]:
    for size in range(max_size + 1):
        yield from iter_partitions(size, predicate)
