"""Perfect matchings of {1, ..., 2n}, the permutation action and generalized distance."""
from __future__ import annotations

import json
import random
from collections import Counter, deque
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Dict, Iterable, Iterator, List, Sequence, Set, Tuple

from matchkern import accel
from matchkern.partition import Partition, as_partition

Pair = Tuple[int, int]


@dataclass(frozen=True)
class Matching:
    """A perfect matching, stored canonically (sorted pairs, smaller element first).

    Elements are 1-indexed.
    """

    pairs: Tuple[Pair, ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in self.pairs))
        seen = [e for p in pairs for e in p]
        if sorted(seen) != list(range(1, 2 * len(pairs) + 1)):
            raise ValueError(f"not a perfect matching of 1..{2 * len(pairs)}: {self.pairs}")
        object.__setattr__(self, "pairs", pairs)

    @property
    def n(self) -> int:
        return len(self.pairs)

    def partners(self) -> List[int]:
        """0-indexed partner array: ``partners()[e] = f`` when ``{e+1, f+1}`` is a pair."""
        out = [0] * (2 * self.n)
        for a, b in self.pairs:
            out[a - 1] = b - 1
            out[b - 1] = a - 1
        return out

    def partner(self, e: int) -> int:
        return self.partners()[e - 1] + 1

    def to_list(self) -> List[List[int]]:
        return [list(p) for p in self.pairs]

    def __str__(self) -> str:
        return "{" + ",".join("{%d,%d}" % p for p in self.pairs) + "}"


def from_partners(partners: Sequence[int]) -> Matching:
    return Matching(tuple((e + 1, f + 1) for e, f in enumerate(partners) if e < f))


def base_point(n: int) -> Matching:
    if n < 1:
        raise ValueError("n must be positive")
    return Matching(tuple((2 * i + 1, 2 * i + 2) for i in range(n)))


def _check_perm(sigma: Sequence[int]) -> Tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError(f"not a permutation of 1..{len(sigma)}: {sigma}")
    return sigma


def act(sigma: Sequence[int], x: Matching) -> Matching:
    """Relabel ``x`` through ``sigma`` (1-indexed images, ``sigma[i-1]`` is the image of i)."""
    sigma = _check_perm(sigma)
    if len(sigma) != 2 * x.n:
        raise ValueError("permutation and matching sizes differ")
    return Matching(tuple((sigma[a - 1], sigma[b - 1]) for a, b in x.pairs))


def compose(sigma: Sequence[int], tau: Sequence[int]) -> Tuple[int, ...]:
    """``sigma ∘ tau`` (apply ``tau`` first)."""
    return tuple(sigma[t - 1] for t in tau)


def transposition(i: int, j: int, size: int) -> Tuple[int, ...]:
    images = list(range(1, size + 1))
    images[i - 1], images[j - 1] = j, i
    return tuple(images)


def random_permutation(size: int, seed: int) -> Tuple[int, ...]:
    images = list(range(1, size + 1))
    random.Random(seed).shuffle(images)
    return tuple(images)


def generalized_distance(x: Matching, y: Matching) -> Partition:
    """Half cycle lengths of the multigraph ``x ∪ y``, a partition of n."""
    if x.n != y.n:
        raise ValueError("matchings have different sizes")
    return accel.distance_from_partners(x.partners(), y.partners())


def sphere_size(mu: Sequence[int]) -> int:
    """Number of matchings at generalized distance ``mu`` from a fixed matching."""
    mu = as_partition(mu)
    n = sum(mu)
    num = factorial(n)
    den = 1
    for k, t in Counter(mu).items():
        num <<= t * (k - 1)
        den *= factorial(t) * k**t
    return num // den


def matching_count(n: int) -> int:
    return factorial(2 * n) // (2**n * factorial(n))


def sphere_members(mu: Sequence[int]) -> Iterator[Matching]:
    """Every matching at generalized distance ``mu`` from the base point.

    Builds the alternating cycles directly: each cycle starts at the smallest
    free base pair, visits ``k - 1`` further pairs in order, and every pair but
    the first may be entered from either end.
    """
    mu = as_partition(mu)
    n = sum(mu)
    partners = [0] * (2 * n)

    def rec(free: Tuple[int, ...], sizes: Counter) -> Iterator[None]:
        if not free:
            yield None
            return
        p, rest = free[0], free[1:]
        for k in sorted(sizes):
            if sizes[k] == 0 or k - 1 > len(rest):
                continue
            sizes[k] -= 1
            for others in permutations(rest, k - 1):
                left = tuple(q for q in rest if q not in others)
                for flips in product((0, 1), repeat=k - 1):
                    ends = [(2 * p, 2 * p + 1)]
                    for q, f in zip(others, flips):
                        ends.append((2 * q + f, 2 * q + 1 - f))
                    for i in range(k):
                        out = ends[i][1]
                        nxt = ends[(i + 1) % k][0]
                        partners[out] = nxt
                        partners[nxt] = out
                    yield from rec(left, sizes)
            sizes[k] += 1

    for _ in rec(tuple(range(n)), Counter(mu)):
        yield from_partners(partners)


def all_matchings(n: int) -> Iterator[Matching]:
    """Every perfect matching of 1..2n (pairs the smallest free element first)."""

    def rec(free: Tuple[int, ...]) -> Iterator[Tuple[Pair, ...]]:
        if not free:
            yield ()
            return
        a = free[0]
        for i in range(1, len(free)):
            b = free[i]
            for rest in rec(free[1:i] + free[i + 1 :]):
                yield ((a, b),) + rest

    for pairs in rec(tuple(range(1, 2 * n + 1))):
        yield Matching(pairs)


def neighbors(x: Matching) -> Set[Matching]:
    """Matchings one transposition away; there are n(n-1) of them."""
    out = set()
    pairs = x.pairs
    for i in range(len(pairs)):
        a, b = pairs[i]
        for j in range(i + 1, len(pairs)):
            c, d = pairs[j]
            rest = pairs[:i] + pairs[i + 1 : j] + pairs[j + 1 :]
            out.add(Matching(rest + ((a, c), (b, d))))
            out.add(Matching(rest + ((a, d), (b, c))))
    return out


def differing_pairs(x: Matching, y: Matching) -> int:
    return len(set(x.pairs) - set(y.pairs))


def distance_lower_bound(x: Matching, y: Matching) -> int:
    """A transposition changes at most two pairs."""
    return (differing_pairs(x, y) + 1) // 2


def quotient_distance(x: Matching, y: Matching, exact_limit: int = 6) -> Tuple[int, bool]:
    """Graph distance in the quotient Cayley graph.

    Returns ``(value, is_lower_bound)``.  Exact breadth-first search when
    ``n <= exact_limit``, otherwise the differing-pairs bound.
    """
    if x.n != y.n:
        raise ValueError("matchings have different sizes")
    if x == y:
        return 0, False
    if x.n > exact_limit:
        return distance_lower_bound(x, y), True
    dist: Dict[Matching, int] = {x: 0}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in neighbors(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                if v == y:
                    return dist[v], False
                queue.append(v)
    raise AssertionError("quotient graph is connected")


def random_matching(n: int, seed: int) -> Matching:
    """Uniform random matching: shuffle 1..2n and pair consecutive entries."""
    if n < 1:
        raise ValueError("n must be positive")
    elems = list(range(1, 2 * n + 1))
    random.Random(seed).shuffle(elems)
    return Matching(tuple((elems[2 * i], elems[2 * i + 1]) for i in range(n)))


def random_matchings(n: int, count: int, seed: int) -> List[Matching]:
    rng = random.Random(seed)
    out = []
    elems = list(range(1, 2 * n + 1))
    for _ in range(count):
        rng.shuffle(elems)
        out.append(Matching(tuple((elems[2 * i], elems[2 * i + 1]) for i in range(n))))
    return out


def to_json(x: Matching) -> str:
    return json.dumps(x.to_list())


def from_json(text: str) -> Matching:
    return Matching(tuple(tuple(p) for p in json.loads(text)))


def load_matchings(data: Iterable) -> List[Matching]:
    """Accept a single matching or a list of matchings in the JSON array form."""
    data = list(data)
    if data and isinstance(data[0], (list, tuple)) and data[0] and isinstance(data[0][0], int):
        data = [data]
    return [Matching(tuple(tuple(p) for p in m)) for m in data]
