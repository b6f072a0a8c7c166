"""Zonal polynomials in the monomial basis and the monomial to power-sum change of basis.

Expansions are dicts from canonical partitions to exact rationals.  Internally
the arithmetic runs on ``_rational.Q``; the public functions hand back
``Fraction`` values and never store explicit zeros.
"""
from __future__ import annotations

import json
import threading
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Mapping, Sequence, Tuple

from matchkern._rational import Q, fraction_str, to_fraction
from matchkern.partition import Partition, _enumerate, as_partition, to_key

Expansion = Dict[Partition, Fraction]

_lock = threading.Lock()


def _f(kappa: Partition) -> int:
    return sum(k * (k - i) for i, k in enumerate(kappa, start=1))


def _raises(kappa: Partition):
    """Partitions obtained from ``kappa`` by moving ``t`` cells from part ``l`` up to part ``r < l``.

    Yields ``(mu, weight)`` with weight ``(kappa_r + t) - (kappa_l - t)``.
    """
    s = len(kappa)
    for l in range(1, s):
        for t in range(1, kappa[l] + 1):
            for r in range(l):
                mu = list(kappa)
                mu[r] += t
                mu[l] -= t
                yield tuple(sorted((p for p in mu if p), reverse=True)), mu[r] - mu[l]


@lru_cache(maxsize=None)
def _zonal_coeffs(rho: Partition) -> Tuple[Tuple[Partition, object], ...]:
    parts = _enumerate(sum(rho))
    start = parts.index(rho)
    f_rho = _f(rho)
    coeffs = {rho: Q(1)}
    for kappa in parts[start + 1 :]:
        num = Q(0)
        for mu, w in _raises(kappa):
            c = coeffs.get(mu)
            if c is not None:
                num += w * c
        if num == 0:
            # Also covers the rare kappa with f_kappa == f_rho, which the
            # recurrence never reaches with a nonzero numerator.
            continue
        den = f_rho - _f(kappa)
        if den == 0:
            raise ArithmeticError(f"zero denominator at rho={rho}, kappa={kappa}")
        coeffs[kappa] = num / den
    return tuple(coeffs.items())


def zonal_monomial_coeffs(rho: Sequence[int]) -> Expansion:
    """Coefficients ``c_{rho,kappa}`` of the zonal polynomial in the monomial basis.

    Normalized so that ``c_{rho,rho} = 1``; only ``kappa <= rho`` can appear.
    """
    rho = as_partition(rho)
    if not rho:
        raise ValueError("need a partition of n >= 1")
    return {k: to_fraction(v) for k, v in _zonal_coeffs(rho)}


@lru_cache(maxsize=None)
def _augmented(kappa: Partition) -> Tuple[Tuple[Partition, int], ...]:
    # power-sum expansion of the augmented monomial; kappa is sorted
    r = len(kappa)
    if r == 1:
        return ((kappa, 1),)
    if r == 2:
        a, b = kappa
        return tuple(Counter({kappa: 1, (a + b,): -1}).items())
    last, head = kappa[-1], kappa[:-1]
    out: Counter = Counter()
    for mu, v in _augmented(head):
        out[tuple(sorted(mu + (last,), reverse=True))] += v
    for i in range(r - 1):
        merged = list(head)
        merged[i] += last
        for mu, v in _augmented(tuple(sorted(merged, reverse=True))):
            out[mu] -= v
    return tuple((mu, v) for mu, v in out.items() if v)


def augmented_monomial(kappa: Sequence[int]) -> Dict[Partition, int]:
    """Integer power-sum expansion of the augmented monomial symmetric function."""
    return dict(_augmented(as_partition(kappa)))


def _multiplicity_factorial(kappa: Partition) -> int:
    out = 1
    for t in Counter(kappa).values():
        out *= factorial(t)
    return out


def transition_matrix_row(kappa: Sequence[int]) -> Expansion:
    """``T_{kappa,mu}`` with ``m_kappa = sum_mu T_{kappa,mu} p_mu``."""
    kappa = as_partition(kappa)
    div = _multiplicity_factorial(kappa)
    return {mu: Fraction(v, div) for mu, v in _augmented(kappa)}


def _to_power_sum(coeffs) -> Dict[Partition, object]:
    out: Dict[Partition, object] = {}
    for kappa, c in coeffs:
        if c == 0:
            continue
        scale = Q(c) / _multiplicity_factorial(kappa)
        for mu, v in _augmented(kappa):
            out[mu] = out.get(mu, 0) + scale * v
    return {mu: v for mu, v in out.items() if v != 0}


def to_power_sum(c: Mapping[Sequence[int], object]) -> Expansion:
    """Rewrite a monomial-basis expansion in the power-sum basis."""
    items = [(as_partition(k), Q(v)) for k, v in c.items()]
    return {mu: to_fraction(v) for mu, v in _to_power_sum(items).items()}


@lru_cache(maxsize=None)
def _zonal_power_sum(rho: Partition) -> Tuple[Tuple[Partition, object], ...]:
    return tuple(_to_power_sum(_zonal_coeffs(rho)).items())


def zonal_power_sum(rho: Sequence[int]) -> Expansion:
    """``b_{rho,mu}``: the zonal polynomial in the power-sum basis."""
    return {mu: to_fraction(v) for mu, v in _zonal_power_sum(as_partition(rho))}


def precompute(n: int) -> int:
    """Fill the transition cache for every partition of ``n``; returns the row count."""
    with _lock:
        for kappa in _enumerate(n):
            _augmented(kappa)
    return len(_enumerate(n))


def clear_caches() -> None:
    _zonal_coeffs.cache_clear()
    _augmented.cache_clear()
    _zonal_power_sum.cache_clear()


def expansion_to_json(expansion: Mapping[Partition, object]) -> str:
    """Debug dump: ``{"a.b.c": "num/den"}``."""
    return json.dumps({to_key(k): fraction_str(v) for k, v in expansion.items()}, sort_keys=True)


def expansion_from_json(text: str) -> Expansion:
    out = {}
    for key, val in json.loads(text).items():
        out[tuple(int(p) for p in key.split("."))] = Fraction(val)
    return out
