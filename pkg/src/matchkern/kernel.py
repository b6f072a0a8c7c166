"""Heat and Matérn kernels on matchings assembled from zonal spherical functions."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import logsumexp

from matchkern import accel
from matchkern.matching import Matching, generalized_distance
from matchkern.partition import (
    Heuristic,
    Partition,
    _enumerate,
    as_partition,
    double,
    partition_count,
    select_truncation,
)
from matchkern.sym_group import dimension, laplacian_eigenvalue
from matchkern.zsf import Backend, zsf

DEFAULT_TRUNCATION = 30


def _exponent(nu: float, degree_correction: bool, n: int) -> float:
    return nu + n * (n - 1) / 2 if degree_correction else nu


def log_filter(lam: float, nu: float, kappa: float, degree_correction: bool = True, n: int = 0) -> float:
    """log Phi(lam); heat when ``nu`` is infinite, Matérn otherwise."""
    if lam < 0:
        raise ValueError("eigenvalue must be non-negative")
    if math.isinf(nu):
        return -kappa * kappa * lam / 2
    return -_exponent(nu, degree_correction, n) * math.log(2 * nu / (kappa * kappa) + lam)


def spectral_filter(lam: float, nu: float, kappa: float, degree_correction: bool = True, n: int = 0) -> float:
    """Phi(lam).  The degree correction only shifts the Matérn exponent."""
    return math.exp(log_filter(lam, nu, kappa, degree_correction, n))


def make_filter(nu: float, kappa: float, degree_correction: bool, n: int):
    return lambda lam: spectral_filter(lam, nu, kappa, degree_correction, n)


def auto_kappa(nu: float, degree_correction: bool, n: int) -> float:
    """Lengthscale making the (n) term twice as heavy as the (n-1, 1) term."""
    if n < 2:
        raise ValueError("auto kappa needs n >= 2")
    second = double((n - 1, 1))
    lam2 = float(laplacian_eigenvalue(second))
    d2 = dimension(second)
    if math.isinf(nu):
        return math.sqrt(2 * math.log(2 * d2) / lam2)
    e = _exponent(nu, degree_correction, n)
    return math.sqrt(2 * nu * math.expm1(math.log(2 * d2) / e) / lam2)


@dataclass(frozen=True)
class SpectralTerm:
    rho: Partition
    eigenvalue: Fraction
    dim: int
    log_weight: float

    @property
    def weight(self) -> float:
        # Phi(lambda) d / (2n)!, may underflow for large n
        return math.exp(self.log_weight)


@dataclass
class KernelConfig:
    n: int
    nu: float = math.inf
    kappa: Union[float, str, None] = "auto"
    truncation: Optional[Sequence[Sequence[int]]] = None
    truncation_size: Optional[int] = None
    heuristic: Union[Heuristic, str] = Heuristic.MAX_PART
    degree_correction: bool = True
    backend: Union[Backend, str] = Backend.ZP

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        self.nu = float(self.nu)
        if not self.nu > 0:
            raise ValueError("nu must be positive")
        if isinstance(self.kappa, str) and self.kappa != "auto":
            self.kappa = float(self.kappa)
        if isinstance(self.kappa, (int, float)) and not self.kappa > 0:
            raise ValueError("kappa must be positive")
        self.backend = Backend.parse(self.backend)
        self.heuristic = Heuristic(self.heuristic)
        if self.truncation is not None:
            trunc = tuple(dict.fromkeys(as_partition(r) for r in self.truncation))
            if not trunc:
                raise ValueError("truncation set must be non-empty")
            if any(sum(r) != self.n for r in trunc):
                raise ValueError("truncation partitions must have size n")
            self.truncation = trunc

    def resolved_kappa(self) -> float:
        if self.kappa is None or self.kappa == "auto":
            if self.n < 2:
                return 1.0
            return auto_kappa(self.nu, self.degree_correction, self.n)
        return float(self.kappa)

    def resolved_truncation(self) -> Tuple[Partition, ...]:
        if self.truncation is not None:
            return tuple(self.truncation)
        size = self.truncation_size or min(DEFAULT_TRUNCATION, partition_count(self.n))
        return tuple(select_truncation(self.n, size, self.heuristic))


def _log_weight(rho: Partition, nu: float, kappa: float, degree_correction: bool) -> Tuple[Fraction, int, float]:
    n = sum(rho)
    shape = double(rho)
    lam = laplacian_eigenvalue(shape) if n >= 1 else Fraction(0)
    d = dimension(shape)
    logw = log_filter(float(lam), nu, kappa, degree_correction, n) + math.log(d) - math.lgamma(2 * n + 1)
    return lam, d, logw


def spectral_terms(config: KernelConfig) -> List[SpectralTerm]:
    """One term per retained partition, heaviest first."""
    kappa = config.resolved_kappa()
    terms = []
    for rho in config.resolved_truncation():
        lam, d, logw = _log_weight(rho, config.nu, kappa, config.degree_correction)
        terms.append(SpectralTerm(rho, lam, d, logw))
    terms.sort(key=lambda t: (-t.log_weight, [-p for p in t.rho]))
    return terms


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MATCHKERN_THREADS", "1")))
    except ValueError:
        return 1


class MatchingKernel:
    """A stationary kernel on matchings of size n, normalized to unit diagonal."""

    def __init__(self, config: KernelConfig, threads: Optional[int] = None):
        self.config = config
        self.n = config.n
        self.kappa = config.resolved_kappa()
        self.terms = spectral_terms(config)
        logw = np.array([t.log_weight for t in self.terms])
        # unnormalized; dividing by the total at the end keeps k(x, x) == 1.0 exactly
        self.weights = np.exp(logw - logw.max()).tolist()
        self._total = math.fsum(self.weights)
        self.threads = threads or _threads()
        self._values: Dict[Partition, float] = {}

    def _compute(self, mu: Partition) -> float:
        backend = self.config.backend
        return math.fsum(w * float(zsf(t.rho, mu, backend)) for w, t in zip(self.weights, self.terms)) / self._total

    def value_at(self, mu: Sequence[int]) -> float:
        """Kernel value for a pair at generalized distance ``mu``."""
        mu = as_partition(mu)
        if sum(mu) != self.n:
            raise ValueError("distance has the wrong size")
        out = self._values.get(mu)
        if out is None:
            out = self._values[mu] = self._compute(mu)
        return out

    def prepare(self, mus: Sequence[Partition]) -> None:
        todo = [as_partition(m) for m in mus if as_partition(m) not in self._values]
        if self.threads > 1 and len(todo) > 1:
            with ThreadPoolExecutor(self.threads) as pool:
                for mu, v in zip(todo, pool.map(self._compute, todo)):
                    self._values[mu] = v
        else:
            for mu in todo:
                self.value_at(mu)

    def __call__(self, x: Matching, y: Matching) -> float:
        if x.n != self.n or y.n != self.n:
            raise ValueError(f"expected matchings of size {self.n}")
        return self.value_at(generalized_distance(x, y))

    def matrix(self, xs: Sequence[Matching]) -> np.ndarray:
        if not xs:
            return np.zeros((0, 0))
        if any(x.n != self.n for x in xs):
            raise ValueError(f"expected matchings of size {self.n}")
        codes, parts = accel.pairwise_distance_codes(np.array([x.partners() for x in xs], dtype=np.int64))
        self.prepare(parts)
        table = np.array([self._values[p] for p in parts])
        return table[codes]

    def table(self) -> Dict[Partition, float]:
        """Kernel value for every generalized distance."""
        mus = list(_enumerate(self.n))
        self.prepare(mus)
        return {mu: self._values[mu] for mu in mus}


def kernel_value(config: KernelConfig, x: Matching, y: Matching) -> float:
    return MatchingKernel(config)(x, y)


def kernel_matrix(config: KernelConfig, xs: Sequence[Matching]) -> np.ndarray:
    return MatchingKernel(config).matrix(xs)


def _resolve_kappa(nu, kappa, degree_correction, n) -> float:
    if kappa is None or kappa == "auto":
        return auto_kappa(nu, degree_correction, n)
    return float(kappa)


def approximation_error(
    n: int,
    nu: float,
    kappa,
    degree_correction: bool,
    truncation: Sequence[Sequence[int]],
) -> float:
    """Relative L2 error of the truncated kernel; no spherical functions needed."""
    nu = float(nu)
    kappa = _resolve_kappa(nu, kappa, degree_correction, n)
    keep = {as_partition(r) for r in truncation}
    inside, outside = [], []
    for rho in _enumerate(n):
        shape = double(rho)
        lam = float(laplacian_eigenvalue(shape))
        a = 2 * log_filter(lam, nu, kappa, degree_correction, n) + math.log(dimension(shape))
        (inside if rho in keep else outside).append(a)
    if not outside:
        return 0.0
    ratio = logsumexp(outside) - logsumexp(inside + outside)
    return math.sqrt(math.exp(min(0.0, ratio)))


def approximation_curve(
    n: int, nu: float, kappa, degree_correction: bool, max_terms: Optional[int] = None, heuristic=Heuristic.MAX_PART
) -> List[Tuple[int, float]]:
    """Relative error for the first 1..max_terms partitions of the heuristic order."""
    total = partition_count(n)
    top = min(max_terms or total, total)
    order = select_truncation(n, top, heuristic)
    return [(k, approximation_error(n, nu, kappa, degree_correction, order[:k])) for k in range(1, top + 1)]


def spectral_density_report(n: int, nu: float, kappa, degree_correction: bool) -> List[Tuple[Partition, float, float]]:
    """Rows ``(rho, lambda_{2 rho}, log(Phi(lambda)^2 d_{2 rho}))``, one per partition of n."""
    nu = float(nu)
    kappa = _resolve_kappa(nu, kappa, degree_correction, n)
    rows = []
    for rho in _enumerate(n):
        shape = double(rho)
        lam = float(laplacian_eigenvalue(shape))
        d = dimension(shape)
        rows.append((rho, lam, 2 * log_filter(lam, nu, kappa, degree_correction, n) + math.log(d)))
    return rows


__all__ = [
    "DEFAULT_TRUNCATION",
    "KernelConfig",
    "MatchingKernel",
    "SpectralTerm",
    "approximation_curve",
    "approximation_error",
    "auto_kappa",
    "kernel_matrix",
    "kernel_value",
    "log_filter",
    "make_filter",
    "spectral_density_report",
    "spectral_filter",
    "spectral_terms",
]
