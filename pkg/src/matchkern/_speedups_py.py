"""Pure-Python versions of the integer hot loops in ``_speedups.pyx``.

Both modules expose the same functions with the same semantics; ``accel``
chooses between them at import time.  Elements are 0-indexed here.
"""
from __future__ import annotations

from itertools import permutations, product

import numpy as np


def distance_from_partners(px, py):
    """Half-lengths of the alternating cycles of ``x ∪ y``, sorted non-increasing."""
    size = len(px)
    seen = [False] * size
    lengths = []
    for start in range(size):
        if seen[start]:
            continue
        half = 0
        e = start
        while True:
            seen[e] = True
            f = px[e]
            seen[f] = True
            half += 1
            e = py[f]
            if e == start:
                break
        lengths.append(half)
    lengths.sort(reverse=True)
    return tuple(lengths)


def pairwise_distance_codes(partners):
    """Generalized distances between all rows of ``partners``.

    Returns ``(codes, parts)``: ``codes[i, j]`` indexes into ``parts``.
    """
    partners = np.asarray(partners, dtype=np.int64)
    m = partners.shape[0]
    rows = [list(r) for r in partners]
    codes = np.zeros((m, m), dtype=np.int64)
    index = {}
    parts = []
    for i in range(m):
        for j in range(i, m):
            mu = distance_from_partners(rows[i], rows[j])
            c = index.get(mu)
            if c is None:
                c = index[mu] = len(parts)
                parts.append(mu)
            codes[i, j] = codes[j, i] = c
    return codes, parts


def _cycle_type(images):
    size = len(images)
    seen = [False] * size
    lengths = []
    for start in range(size):
        if seen[start]:
            continue
        k = 0
        e = start
        while not seen[e]:
            seen[e] = True
            e = images[e]
            k += 1
        lengths.append(k)
    lengths.sort(reverse=True)
    return tuple(lengths)


def cycle_type(images):
    return _cycle_type(list(images))


def coset_cycle_type_counts(sigma, n):
    """Multiset of cycle types of ``pi ∘ sigma`` as ``pi`` runs over the stabilizer of x0.

    x0 pairs ``2i`` with ``2i + 1``; a stabilizer element permutes pairs and may
    flip each one.
    """
    sigma = list(sigma)
    counts = {}
    tau = [0] * (2 * n)
    for perm in permutations(range(n)):
        for flips in product((0, 1), repeat=n):
            for e in range(2 * n):
                s = sigma[e]
                i, b = divmod(s, 2)
                tau[e] = 2 * perm[i] + (b ^ flips[i])
            ct = _cycle_type(tau)
            counts[ct] = counts.get(ct, 0) + 1
    return counts


def signed_cover_count(rows, signs, pairs):
    """Sum over tabloids of ``sign * #{matchings whose pairs each sit in one row}``.

    ``rows[s, e]`` is the row of element ``e`` in the ``s``-th tabloid;
    ``pairs[k]`` lists the ``n`` pairs of the ``k``-th matching.
    """
    rows = np.asarray(rows, dtype=np.int64).tolist()
    pairs = np.asarray(pairs, dtype=np.int64).tolist()
    total = 0
    for row, sign in zip(rows, signs):
        covered = 0
        for x in pairs:
            for a, b in x:
                if row[a] != row[b]:
                    break
            else:
                covered += 1
        total += int(sign) * covered
    return total
