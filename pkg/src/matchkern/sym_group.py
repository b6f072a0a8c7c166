"""Characters, dimensions and Cayley-graph Laplacian eigenvalues of symmetric groups."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence, Tuple

from matchkern.partition import Partition, conjugate


def _check(rho: Sequence[int]) -> Partition:
    rho = tuple(rho)
    if any(p < 1 for p in rho) or any(rho[i] < rho[i + 1] for i in range(len(rho) - 1)):
        raise ValueError(f"not a partition: {rho}")
    return rho


@lru_cache(maxsize=None)
def _dimension(rho: Partition) -> int:
    m = sum(rho)
    conj = conjugate(rho)
    hooks = 1
    for i, row in enumerate(rho):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    d, r = divmod(factorial(m), hooks)
    assert r == 0
    return d


def dimension(rho: Sequence[int]) -> int:
    """Dimension of the irreducible representation ``rho`` (hook length formula)."""
    return _dimension(_check(rho))


def border_strips(shape: Partition, size: int) -> Iterator[Tuple[Partition, int]]:
    """Yield ``(shape minus strip, height)`` for each removable border strip.

    One candidate per starting (top) row.  The rim is walked through
    first-column hook numbers: removing a strip of ``size`` cells whose top row
    is ``i`` lowers the bead at ``beta_i`` by ``size``; it is valid when the
    target position is free and non-negative.
    """
    length = len(shape)
    beta = [shape[i] + (length - 1 - i) for i in range(length)]
    occupied = set(beta)
    for i in range(length):
        target = beta[i] - size
        if target < 0 or target in occupied:
            continue
        height = sum(1 for b in beta if target < b < beta[i])
        new_beta = sorted((target if k == i else b for k, b in enumerate(beta)), reverse=True)
        new_shape = tuple(
            p for p in (new_beta[k] - (length - 1 - k) for k in range(length)) if p > 0
        )
        yield new_shape, height


@lru_cache(maxsize=None)
def _character(shape: Partition, class_type: Partition) -> int:
    if not class_type:
        return 1
    if class_type[0] == 1:
        return _dimension(shape)
    first, rest = class_type[0], class_type[1:]
    value = 0
    for smaller, height in border_strips(shape, first):
        term = _character(smaller, rest)
        value += -term if height % 2 else term
    return value


def character(rho: Sequence[int], class_type: Sequence[int]) -> int:
    """chi^rho evaluated on the conjugacy class with cycle type ``class_type``.

    Murnaghan-Nakayama recursion, memoized on (remaining shape, remaining class).
    """
    rho, class_type = _check(rho), _check(class_type)
    if sum(rho) != sum(class_type):
        raise ValueError(f"size mismatch: {rho} vs {class_type}")
    return _character(rho, class_type)


def class_size(class_type: Sequence[int]) -> int:
    m = sum(class_type)
    denom = 1
    counts: dict = {}
    for k in class_type:
        counts[k] = counts.get(k, 0) + 1
    for k, t in counts.items():
        denom *= k**t * factorial(t)
    return factorial(m) // denom


def transposition_count(m: int) -> int:
    return m * (m - 1) // 2


def transposition_character(rho: Sequence[int]) -> int:
    """chi^rho at a transposition, using size-2 border strips and dimensions only."""
    rho = _check(rho)
    if sum(rho) < 2:
        raise ValueError("need m >= 2")
    value = 0
    for smaller, height in border_strips(rho, 2):
        d = _dimension(smaller)
        value += -d if height % 2 else d
    return value


@lru_cache(maxsize=None)
def _eigenvalue(rho: Partition) -> Fraction:
    d = _dimension(rho)
    w = transposition_count(sum(rho))
    return Fraction(w * (d - transposition_character(rho)), d)


def laplacian_eigenvalue(rho: Sequence[int]) -> Fraction:
    """Eigenvalue of the all-transpositions Cayley graph Laplacian on isotypic ``rho``."""
    rho = _check(rho)
    if sum(rho) < 2:
        raise ValueError("need a partition of m >= 2")
    return _eigenvalue(rho)


def clear_caches() -> None:
    _dimension.cache_clear()
    _character.cache_clear()
    _eigenvalue.cache_clear()
