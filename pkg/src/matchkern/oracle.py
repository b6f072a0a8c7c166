"""Brute-force spectral ground truth for tiny n.

Two independent routes to the kernel: the transposition Cayley graph of the
whole group S_2n (then averaged over cosets of the base-point stabilizer), and
the quotient graph on matchings built from ``matching.neighbors``.
"""
from __future__ import annotations

import math
from itertools import permutations
from typing import Dict, List, Tuple

import numpy as np

from matchkern.kernel import KernelConfig, MatchingKernel, auto_kappa, log_filter
from matchkern.matching import Matching, all_matchings, from_partners, neighbors
from matchkern.partition import _enumerate, double
from matchkern.sym_group import dimension, laplacian_eigenvalue
from matchkern.zsf import CapabilityError

GROUP_MAX_N = 3
QUOTIENT_MAX_N = 6
# Cayley Laplacian restricted to H-invariant functions equals this multiple of
# the quotient graph Laplacian: every adjacent pair is joined by two transpositions.
QUOTIENT_SCALE = 2


def _kappa(nu: float, kappa, degree_correction: bool, n: int) -> float:
    if kappa is None or kappa == "auto":
        return auto_kappa(nu, degree_correction, n) if n >= 2 else 1.0
    return float(kappa)


def _apply_filter(evals: np.ndarray, nu: float, kappa: float, degree_correction: bool, n: int) -> np.ndarray:
    clipped = np.clip(evals, 0.0, None)
    return np.exp([log_filter(float(v), nu, kappa, degree_correction, n) for v in clipped])


def _spectral_matrix(lap: np.ndarray, nu, kappa, degree_correction, n, scale=1.0) -> np.ndarray:
    evals, vecs = np.linalg.eigh(lap)
    phi = _apply_filter(scale * evals, nu, kappa, degree_correction, n)
    return (vecs * phi) @ vecs.T


def _normalize_diagonal(k: np.ndarray) -> np.ndarray:
    d = np.sqrt(np.diag(k))
    return k / np.outer(d, d)


def cayley_laplacian(n: int) -> Tuple[np.ndarray, List[Tuple[int, ...]]]:
    """Dense Laplacian of the all-transpositions Cayley graph of S_2n."""
    size = 2 * n
    elems = list(permutations(range(size)))
    index = {p: i for i, p in enumerate(elems)}
    degree = size * (size - 1) // 2
    lap = np.eye(len(elems)) * degree
    for i, p in enumerate(elems):
        for a in range(size):
            for b in range(a + 1, size):
                # left multiplication by the transposition (a b)
                q = tuple(b if v == a else a if v == b else v for v in p)
                lap[i, index[q]] -= 1.0
    return lap, elems


def _coset_of(p: Tuple[int, ...], n: int) -> Matching:
    partners = [0] * (2 * n)
    for i in range(n):
        a, b = p[2 * i], p[2 * i + 1]
        partners[a], partners[b] = b, a
    return from_partners(partners)


def group_kernel_projected(n: int, nu: float = math.inf, kappa=1.0, degree_correction: bool = True) -> Tuple[np.ndarray, List[Matching]]:
    """Group kernel on S_2n averaged over both stabilizer cosets, unit diagonal.

    Returns the matrix and the matchings indexing its rows.
    """
    if n > GROUP_MAX_N or n < 1:
        raise CapabilityError(f"group oracle supports 1 <= n <= {GROUP_MAX_N}, got {n}")
    nu = float(nu)
    kappa = _kappa(nu, kappa, degree_correction, n)
    lap, elems = cayley_laplacian(n)
    kg = _spectral_matrix(lap, nu, kappa, degree_correction, n)
    xs = list(all_matchings(n))
    pos = {x: i for i, x in enumerate(xs)}
    member = np.zeros((len(xs), len(elems)))
    for j, p in enumerate(elems):
        member[pos[_coset_of(p, n)], j] = 1.0
    member /= member.sum(axis=1, keepdims=True)
    return _normalize_diagonal(member @ kg @ member.T), xs


def quotient_laplacian(n: int) -> Tuple[np.ndarray, List[Matching]]:
    """Combinatorial Laplacian of the unweighted quotient graph on matchings."""
    if n > QUOTIENT_MAX_N or n < 1:
        raise CapabilityError(f"quotient oracle supports 1 <= n <= {QUOTIENT_MAX_N}, got {n}")
    xs = list(all_matchings(n))
    pos = {x: i for i, x in enumerate(xs)}
    lap = np.zeros((len(xs), len(xs)))
    for i, x in enumerate(xs):
        nb = neighbors(x)
        lap[i, i] = len(nb)
        for y in nb:
            lap[i, pos[y]] -= 1.0
    return lap, xs


def quotient_degrees(n: int) -> List[int]:
    return [len(neighbors(x)) for x in all_matchings(n)]


def quotient_graph_kernel(
    n: int, nu: float = math.inf, kappa=1.0, degree_correction: bool = True, scale: float = QUOTIENT_SCALE
) -> Tuple[np.ndarray, List[Matching]]:
    """Spectral kernel of the quotient graph with eigenvalues rescaled by ``scale``, unit diagonal."""
    nu = float(nu)
    kappa = _kappa(nu, kappa, degree_correction, n)
    lap, xs = quotient_laplacian(n)
    return _normalize_diagonal(_spectral_matrix(lap, nu, kappa, degree_correction, n, scale)), xs


def _group_values(values: np.ndarray, tol: float) -> List[Tuple[float, int]]:
    out: List[Tuple[float, int]] = []
    for v in np.sort(values):
        if out and abs(v - out[-1][0]) <= tol * max(1.0, abs(v)):
            out[-1] = (out[-1][0], out[-1][1] + 1)
        else:
            out.append((float(v), 1))
    return out


def expected_spectrum(n: int) -> Dict[float, int]:
    """Eigenvalue -> multiplicity predicted from partitions: lambda_{2 rho} with weight d_{2 rho}."""
    out: Dict[float, int] = {}
    for rho in _enumerate(n):
        shape = double(rho)
        lam = float(laplacian_eigenvalue(shape)) if n >= 1 else 0.0
        out[lam] = out.get(lam, 0) + dimension(shape)
    return out


def quotient_spectrum_report(n: int, tol: float = 1e-8) -> dict:
    """Compare the quotient-graph spectrum with the predicted one up to a fitted scale."""
    lap, _ = quotient_laplacian(n)
    observed = _group_values(np.linalg.eigvalsh(lap), tol)
    expected = sorted(expected_spectrum(n).items())
    obs_nonzero = [v for v, _ in observed if abs(v) > tol]
    exp_nonzero = [v for v, _ in expected if v > tol]
    # n = 1 has no nonzero eigenvalue to fit against
    scale = exp_nonzero[0] / obs_nonzero[0] if obs_nonzero else float(QUOTIENT_SCALE)
    scaled = [(v * scale, m) for v, m in observed]
    ok = len(scaled) == len(expected) and all(
        abs(a - b) <= tol * max(1.0, b) and ma == mb for (a, ma), (b, mb) in zip(scaled, expected)
    )
    return {
        "n": n,
        "scale": scale,
        "observed": scaled,
        "expected": expected,
        "passed": ok and abs(scale - QUOTIENT_SCALE) <= tol,
    }


def validate_spectral_identity(
    n: int, nu: float = math.inf, kappa=1.0, degree_correction: bool = True, tol: float = 1e-8
) -> dict:
    """Max deviation between the projected group kernel and the full spherical-function kernel."""
    nu = float(nu)
    kappa = _kappa(nu, kappa, degree_correction, n)
    kg, xs = group_kernel_projected(n, nu, kappa, degree_correction)
    cfg = KernelConfig(n, nu=nu, kappa=kappa, truncation=list(_enumerate(n)), degree_correction=degree_correction)
    ks = MatchingKernel(cfg).matrix(xs)
    diff = float(np.max(np.abs(kg - ks)))
    return {"n": n, "max_abs_diff": diff, "passed": diff <= tol}


def validate_quotient_kernel(
    n: int, nu: float = math.inf, kappa=1.0, degree_correction: bool = True, tol: float = 1e-8
) -> dict:
    nu = float(nu)
    kappa = _kappa(nu, kappa, degree_correction, n)
    kq, xs = quotient_graph_kernel(n, nu, kappa, degree_correction)
    cfg = KernelConfig(n, nu=nu, kappa=kappa, truncation=list(_enumerate(n)), degree_correction=degree_correction)
    ks = MatchingKernel(cfg).matrix(xs)
    diff = float(np.max(np.abs(kq - ks)))
    return {"n": n, "max_abs_diff": diff, "passed": diff <= tol}


def run_checks(n: int, nu: float = math.inf, kappa=1.0, degree_correction: bool = True) -> List[Tuple[str, bool, str]]:
    """(name, passed, detail) for every oracle check applicable at this n."""
    if n > QUOTIENT_MAX_N or n < 1:
        raise CapabilityError(f"oracle checks support 1 <= n <= {QUOTIENT_MAX_N}, got {n}")
    results = []
    degrees = quotient_degrees(n)
    regular = all(d == n * (n - 1) for d in degrees)
    results.append(("degree", regular, f"degree n(n-1)={n * (n - 1)}, observed {sorted(set(degrees))}"))
    if n <= 5:
        rep = quotient_spectrum_report(n)
        results.append(("quotient-spectrum", rep["passed"], f"fitted scale {rep['scale']:.12g}"))
        rep = validate_quotient_kernel(n, nu, kappa, degree_correction)
        results.append(("quotient-kernel", rep["passed"], f"max abs diff {rep['max_abs_diff']:.3e}"))
    if n <= GROUP_MAX_N:
        rep = validate_spectral_identity(n, nu, kappa, degree_correction)
        results.append(("group-kernel", rep["passed"], f"max abs diff {rep['max_abs_diff']:.3e}"))
    return results
