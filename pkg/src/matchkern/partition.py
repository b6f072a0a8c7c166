"""Integer partitions: enumeration, ordering, conjugation and truncation selection.

Partitions are plain tuples of positive ints in non-increasing order; the empty
tuple is the unique partition of 0.  Using tuples keeps them hashable and cheap
as dictionary keys, which the symmetric-function code relies on heavily.
"""
from __future__ import annotations

import enum
import json
from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, List, Sequence, Tuple

Partition = Tuple[int, ...]


class Heuristic(str, enum.Enum):
    """Orderings used to pick a truncation set of partitions."""

    MAX_PART = "max-part"
    LENGTH = "length"
    MIN_PART = "min-part"


def as_partition(parts: Iterable[int]) -> Partition:
    """Validate and canonicalize ``parts`` (sorted non-increasing)."""
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p < 1 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 1 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def _partitions_bounded(n: int, max_part: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate(n: int) -> Tuple[Partition, ...]:
    return tuple(_partitions_bounded(n, n))


def enumerate_partitions(n: int) -> List[Partition]:
    """All partitions of ``n`` in strictly descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_enumerate(n))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) via Euler's pentagonal number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def conjugate(rho: Sequence[int]) -> Partition:
    if not rho:
        return ()
    return tuple(sum(1 for p in rho if p >= j) for j in range(1, rho[0] + 1))


def double(rho: Sequence[int]) -> Partition:
    return tuple(2 * p for p in rho)


def lex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """-1, 0 or 1 as ``a`` is lexicographically below, equal to or above ``b``."""
    if sum(a) != sum(b):
        raise ValueError(f"cannot compare partitions of different sizes: {a} vs {b}")
    a, b = tuple(a), tuple(b)
    return (a > b) - (a < b)


def multiplicities(rho: Sequence[int]) -> Counter:
    return Counter(rho)


def _selection_key(heuristic: Heuristic):
    # Every key ends with the descending-lex tie-break.
    if heuristic is Heuristic.MAX_PART:
        return lambda p: (-p[0],) + tuple(-x for x in p)
    if heuristic is Heuristic.LENGTH:
        return lambda p: (len(p),) + tuple(-x for x in p)
    if heuristic is Heuristic.MIN_PART:
        return lambda p: (-p[-1],) + tuple(-x for x in p)
    raise ValueError(heuristic)


def select_truncation(
    n: int, size: int, heuristic: Heuristic | str = Heuristic.MAX_PART
) -> List[Partition]:
    """Pick ``size`` partitions of ``n`` expected to carry the lowest eigenvalues.

    The default orders by largest first part, breaking ties by descending
    lexicographic order, so results for growing ``size`` are nested.
    """
    if n < 1:
        raise ValueError("n must be positive")
    total = partition_count(n)
    if not 1 <= size <= total:
        raise ValueError(f"size must lie in [1, {total}], got {size}")
    heuristic = Heuristic(heuristic)
    ordered = sorted(_enumerate(n), key=_selection_key(heuristic))
    return ordered[:size]


def to_json(rho: Sequence[int]) -> str:
    return json.dumps(list(rho))


def from_json(text: str) -> Partition:
    return as_partition(json.loads(text))


def to_key(rho: Sequence[int]) -> str:
    """Dotted string form, e.g. ``"4.2.1"``."""
    return ".".join(str(p) for p in rho)
