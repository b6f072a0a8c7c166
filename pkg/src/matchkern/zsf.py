"""Zonal spherical functions of the pair (S_2n, H_n) through three independent routes.

* ``zp``: zonal polynomials expanded in power sums (fast, any n).
* ``explicit``: signed counts of sphere members covered by column-permuted tableaux.
* ``avg``: the H_n-average of the character of 2rho over a coset.

Each backend keeps its own cache keyed by ``(rho, mu)`` so the cross-checks
between them stay independent.
"""
from __future__ import annotations

import enum
import threading
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Dict, List, Sequence, Tuple

import numpy as np

from matchkern import accel
from matchkern._rational import Q, to_fraction
from matchkern.matching import base_point, from_partners, generalized_distance, sphere_members, sphere_size
from matchkern.partition import Partition, _enumerate, as_partition, double
from matchkern.sym_group import character
from matchkern.symfunc import _zonal_power_sum

EXPLICIT_MAX_N = 7
AVERAGING_MAX_N = 6


class CapabilityError(RuntimeError):
    """Raised when a slow backend is asked for an n above its guard."""


class Backend(str, enum.Enum):
    ZP = "zp"
    EXPLICIT = "explicit"
    AVG = "avg"

    @classmethod
    def parse(cls, value) -> "Backend":
        aliases = {
            "zonal_polynomial": cls.ZP,
            "explicit_formula": cls.EXPLICIT,
            "character_averaging": cls.AVG,
            "averaging": cls.AVG,
        }
        if isinstance(value, cls):
            return value
        return aliases.get(value) or cls(value)


_caches: Dict[Backend, Dict[Tuple[Partition, Partition], Fraction]] = {b: {} for b in Backend}
_lock = threading.Lock()


def _pair(rho: Sequence[int], mu: Sequence[int]) -> Tuple[Partition, Partition]:
    rho, mu = as_partition(rho), as_partition(mu)
    if sum(rho) != sum(mu):
        raise ValueError(f"size mismatch: rho={rho}, mu={mu}")
    if not rho:
        raise ValueError("need n >= 1")
    return rho, mu


def _store(backend: Backend, key, value: Fraction) -> Fraction:
    # insert-once; a concurrent duplicate computes the same value
    with _lock:
        return _caches[backend].setdefault(key, value)


def clear_caches() -> None:
    with _lock:
        for cache in _caches.values():
            cache.clear()


# zonal polynomial route


def _zp_values(rho: Partition) -> Dict[Partition, Fraction]:
    n = sum(rho)
    b = dict(_zonal_power_sum(rho))
    b_ones = b.get((1,) * n, 0)
    assert b_ones != 0, f"vanishing leading power-sum coefficient for {rho}"
    out = {}
    for mu in _enumerate(n):
        out[mu] = to_fraction(Q(b.get(mu, 0)) / (b_ones * sphere_size(mu)))
    return out


def zsf_zonal_polynomial(rho: Sequence[int], mu: Sequence[int]) -> Fraction:
    """phi_rho(mu) = b_{rho,mu} / (b_{rho,1^n} |A_mu|)."""
    key = _pair(rho, mu)
    cache = _caches[Backend.ZP]
    if key not in cache:
        for m, v in _zp_values(key[0]).items():
            _store(Backend.ZP, (key[0], m), v)
    return cache[key]


# explicit route


def _odd_column_tabloids(rho: Partition):
    """Row assignments and signs of sigma t for sigma in the odd-column group."""
    n = sum(rho)
    shape = double(rho)
    rows = []
    start = 0
    for length in shape:
        rows.append(list(range(start, start + length)))
        start += length
    base = [0] * (2 * n)
    for i, row in enumerate(rows):
        for e in row:
            base[e] = i
    columns = []
    for j in range(0, shape[0], 2):
        columns.append([rows[i][j] for i in range(len(shape)) if shape[i] > j])
    col_perms = []
    for col in columns:
        choices = []
        for perm in permutations(range(len(col))):
            inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
            choices.append((perm, -1 if inv % 2 else 1))
        col_perms.append(choices)

    assignments, signs = [], []

    def rec(k: int, current: List[int], sign: int) -> None:
        if k == len(columns):
            assignments.append(list(current))
            signs.append(sign)
            return
        col = columns[k]
        for perm, s in col_perms[k]:
            saved = [current[e] for e in col]
            for idx, e in enumerate(col):
                current[e] = base[col[perm[idx]]]
            rec(k + 1, current, sign * s)
            for e, r in zip(col, saved):
                current[e] = r

    rec(0, list(base), 1)
    return np.asarray(assignments, dtype=np.int64), np.asarray(signs, dtype=np.int64)


def _sphere_pairs(mu: Partition) -> np.ndarray:
    members = [[(a - 1, b - 1) for a, b in x.pairs] for x in sphere_members(mu)]
    return np.asarray(members, dtype=np.int64).reshape(len(members), sum(mu), 2)


def zsf_explicit(rho: Sequence[int], mu: Sequence[int], max_n: int = EXPLICIT_MAX_N) -> Fraction:
    """phi_rho(mu) = a_mu / |A_mu| from signed tableau covers of the sphere."""
    key = _pair(rho, mu)
    n = sum(key[0])
    if n > max_n:
        raise CapabilityError(f"explicit backend is limited to n <= {max_n}, got n={n}")
    cache = _caches[Backend.EXPLICIT]
    if key not in cache:
        rows, signs = _odd_column_tabloids(key[0])
        pairs = _sphere_pairs(key[1])
        a = accel.signed_cover_count(rows, signs, pairs)
        _store(Backend.EXPLICIT, key, Fraction(a, len(pairs)))
    return cache[key]


# character averaging route


def coset_representative(mu: Sequence[int]) -> List[int]:
    """0-indexed permutation moving the base point to distance ``mu``.

    A cyclic shift on each block of ``2 mu_i`` consecutive elements.
    """
    mu = as_partition(mu)
    images = []
    start = 0
    for k in mu:
        block = list(range(start, start + 2 * k))
        images.extend(block[1:] + block[:1])
        start += 2 * k
    return images


def zsf_averaging(rho: Sequence[int], mu: Sequence[int], max_n: int = AVERAGING_MAX_N) -> Fraction:
    """phi_rho(mu) as the mean of chi^{2 rho} over the coset H_n sigma."""
    key = _pair(rho, mu)
    n = sum(key[0])
    if n > max_n:
        raise CapabilityError(f"averaging backend is limited to n <= {max_n}, got n={n}")
    cache = _caches[Backend.AVG]
    if key not in cache:
        sigma = coset_representative(key[1])
        moved = from_partners(_apply(sigma, n))
        assert generalized_distance(moved, base_point(n)) == key[1]
        counts = accel.coset_cycle_type_counts(sigma, n)
        shape = double(key[0])
        total = sum(cnt * character(shape, ct) for ct, cnt in counts.items())
        _store(Backend.AVG, key, Fraction(total, 2**n * factorial(n)))
    return cache[key]


def _apply(sigma: Sequence[int], n: int) -> List[int]:
    partners = [0] * (2 * n)
    for i in range(n):
        a, b = sigma[2 * i], sigma[2 * i + 1]
        partners[a], partners[b] = b, a
    return partners


_DISPATCH = {
    Backend.ZP: zsf_zonal_polynomial,
    Backend.EXPLICIT: zsf_explicit,
    Backend.AVG: zsf_averaging,
}


def zsf(rho: Sequence[int], mu: Sequence[int], backend="zp") -> Fraction:
    return _DISPATCH[Backend.parse(backend)](rho, mu)


def zsf_table(rho: Sequence[int], backend="zp") -> Dict[Partition, Fraction]:
    """All values phi_rho(mu), mu running over partitions of n in descending lex order."""
    rho = as_partition(rho)
    fn = _DISPATCH[Backend.parse(backend)]
    return {mu: fn(rho, mu) for mu in _enumerate(sum(rho))}


def weighted_inner_product(rho: Sequence[int], sigma: Sequence[int], backend="zp") -> Fraction:
    """sum_mu |A_mu| phi_rho(mu) phi_sigma(mu)."""
    a, b = zsf_table(rho, backend), zsf_table(sigma, backend)
    return sum((sphere_size(mu) * a[mu] * b[mu] for mu in a), Fraction(0))


def expected_norm(rho: Sequence[int]) -> Fraction:
    """|X_n| / d_{2 rho}."""
    from matchkern.matching import matching_count
    from matchkern.sym_group import dimension

    rho = as_partition(rho)
    return Fraction(matching_count(sum(rho)), dimension(double(rho)))


__all__ = [
    "AVERAGING_MAX_N",
    "Backend",
    "CapabilityError",
    "EXPLICIT_MAX_N",
    "clear_caches",
    "coset_representative",
    "expected_norm",
    "weighted_inner_product",
    "zsf",
    "zsf_averaging",
    "zsf_explicit",
    "zsf_table",
    "zsf_zonal_polynomial",
]
