# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer hot loops; see ``_speedups_py`` for the reference semantics."""
from itertools import permutations

import numpy as np

from libc.stdlib cimport malloc, free


cdef void _sort_desc(long *a, Py_ssize_t k) noexcept nogil:
    # insertion sort; k <= 2n is small
    cdef Py_ssize_t i, j
    cdef long v
    for i in range(1, k):
        v = a[i]
        j = i - 1
        while j >= 0 and a[j] < v:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = v


cdef Py_ssize_t _alt_cycles(const long[:] px, const long[:] py, char *seen,
                            long *out) noexcept nogil:
    cdef Py_ssize_t size = px.shape[0]
    cdef Py_ssize_t start, k = 0
    cdef long e, f, half
    for start in range(size):
        seen[start] = 0
    for start in range(size):
        if seen[start]:
            continue
        half = 0
        e = start
        while True:
            seen[e] = 1
            f = px[e]
            seen[f] = 1
            half += 1
            e = py[f]
            if e == start:
                break
        out[k] = half
        k += 1
    _sort_desc(out, k)
    return k


def distance_from_partners(px, py):
    cdef long[:] a = np.ascontiguousarray(px, dtype=np.int64)
    cdef long[:] b = np.ascontiguousarray(py, dtype=np.int64)
    cdef Py_ssize_t size = a.shape[0]
    cdef char *seen = <char *> malloc(size + 1)
    cdef long *out = <long *> malloc((size + 1) * sizeof(long))
    cdef Py_ssize_t k
    try:
        k = _alt_cycles(a, b, seen, out)
        return tuple([out[i] for i in range(k)])
    finally:
        free(seen)
        free(out)


def pairwise_distance_codes(partners):
    cdef long[:, :] p = np.ascontiguousarray(partners, dtype=np.int64)
    cdef Py_ssize_t m = p.shape[0]
    cdef Py_ssize_t size = p.shape[1]
    codes_arr = np.zeros((m, m), dtype=np.int64)
    cdef long[:, :] codes = codes_arr
    cdef char *seen = <char *> malloc(size + 1)
    cdef long *out = <long *> malloc((size + 1) * sizeof(long))
    cdef Py_ssize_t i, j, k, t
    cdef long c
    index = {}
    parts = []
    try:
        for i in range(m):
            for j in range(i, m):
                k = _alt_cycles(p[i], p[j], seen, out)
                mu = tuple([out[t] for t in range(k)])
                found = index.get(mu)
                if found is None:
                    c = len(parts)
                    index[mu] = c
                    parts.append(mu)
                else:
                    c = found
                codes[i, j] = c
                codes[j, i] = c
    finally:
        free(seen)
        free(out)
    return codes_arr, parts


cdef Py_ssize_t _cycle_lengths(long *images, Py_ssize_t size, char *seen,
                               long *out) noexcept nogil:
    cdef Py_ssize_t start, k = 0
    cdef long e, length
    for start in range(size):
        seen[start] = 0
    for start in range(size):
        if seen[start]:
            continue
        length = 0
        e = start
        while not seen[e]:
            seen[e] = 1
            e = images[e]
            length += 1
        out[k] = length
        k += 1
    _sort_desc(out, k)
    return k


def cycle_type(images):
    cdef long[:] im = np.ascontiguousarray(images, dtype=np.int64)
    cdef Py_ssize_t size = im.shape[0]
    cdef long *buf = <long *> malloc((size + 1) * sizeof(long))
    cdef long *out = <long *> malloc((size + 1) * sizeof(long))
    cdef char *seen = <char *> malloc(size + 1)
    cdef Py_ssize_t i, k
    try:
        for i in range(size):
            buf[i] = im[i]
        k = _cycle_lengths(buf, size, seen, out)
        return tuple([out[i] for i in range(k)])
    finally:
        free(buf)
        free(out)
        free(seen)


def coset_cycle_type_counts(sigma, long n):
    cdef long[:] sg = np.ascontiguousarray(sigma, dtype=np.int64)
    cdef Py_ssize_t size = 2 * n
    cdef long *tau = <long *> malloc((size + 1) * sizeof(long))
    cdef long *out = <long *> malloc((size + 1) * sizeof(long))
    cdef long *perm = <long *> malloc((n + 1) * sizeof(long))
    cdef char *seen = <char *> malloc(size + 1)
    cdef unsigned long flips, nflips = 1UL << n
    cdef Py_ssize_t e, k, t
    cdef long s, i, b
    cdef long long code, base = size + 1
    by_code = {}
    try:
        for p in permutations(range(n)):
            for t in range(n):
                perm[t] = p[t]
            for flips in range(nflips):
                for e in range(size):
                    s = sg[e]
                    i = s >> 1
                    b = s & 1
                    tau[e] = 2 * perm[i] + (b ^ ((flips >> i) & 1))
                k = _cycle_lengths(tau, size, seen, out)
                code = 0
                for t in range(k):
                    code = code * base + out[t]
                by_code[code] = by_code.get(code, 0) + 1
    finally:
        free(tau)
        free(out)
        free(perm)
        free(seen)
    counts = {}
    for code, cnt in by_code.items():
        lengths = []
        while code:
            lengths.append(code % base)
            code //= base
        counts[tuple(sorted(lengths, reverse=True))] = cnt
    return counts


def signed_cover_count(rows, signs, pairs):
    cdef long[:, :] r = np.ascontiguousarray(rows, dtype=np.int64)
    cdef long[:] sg = np.ascontiguousarray(signs, dtype=np.int64)
    cdef long[:, :, :] x = np.ascontiguousarray(pairs, dtype=np.int64)
    cdef Py_ssize_t ns = r.shape[0], nx = x.shape[0], npairs = x.shape[1]
    cdef Py_ssize_t s, k, h
    cdef long long covered, total = 0
    cdef bint ok
    with nogil:
        for s in range(ns):
            covered = 0
            for k in range(nx):
                ok = True
                for h in range(npairs):
                    if r[s, x[k, h, 0]] != r[s, x[k, h, 1]]:
                        ok = False
                        break
                if ok:
                    covered += 1
            total += sg[s] * covered
    return int(total)
