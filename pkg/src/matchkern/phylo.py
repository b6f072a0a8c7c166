"""Rooted binary phylogenetic trees and their encodings as perfect matchings.

A tree is a nested pair structure: a leaf is a positive int, an internal node a
2-tuple of subtrees.  Children are kept ordered by their smallest leaf, which
makes equal topologies compare and hash equal.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple, Union

from matchkern.matching import Matching, act, differing_pairs, distance_lower_bound, transposition

Node = Union[int, Tuple["Node", "Node"]]


def _min_leaf(node: Node) -> int:
    while not isinstance(node, int):
        node = node[0]
    return node


def canonical(node: Node) -> Node:
    if isinstance(node, int):
        return node
    a, b = canonical(node[0]), canonical(node[1])
    return (a, b) if _min_leaf(a) < _min_leaf(b) else (b, a)


def _leaves(node: Node) -> List[int]:
    if isinstance(node, int):
        return [node]
    return _leaves(node[0]) + _leaves(node[1])


@dataclass(frozen=True)
class PhyloTree:
    """Rooted binary tree with leaves labeled 1..n+1."""

    root: Node

    def __post_init__(self):
        root = canonical(self.root)
        leaves = sorted(_leaves(root))
        if leaves != list(range(1, len(leaves) + 1)):
            raise ValueError(f"leaves must be 1..{len(leaves)}, got {leaves}")
        if len(leaves) < 2:
            raise ValueError("a tree needs at least two leaves")
        object.__setattr__(self, "root", root)

    @property
    def num_leaves(self) -> int:
        return len(_leaves(self.root))

    @property
    def n(self) -> int:
        """Matching size under the bijection (leaves minus one)."""
        return self.num_leaves - 1

    def internal_nodes(self) -> List[Tuple[Node, Node]]:
        out = []

        def walk(node):
            if not isinstance(node, int):
                out.append(node)
                walk(node[0])
                walk(node[1])

        walk(self.root)
        return out

    def __str__(self) -> str:
        return to_newick(self)


# Newick


def to_newick(tree: PhyloTree) -> str:
    def fmt(node):
        if isinstance(node, int):
            return str(node)
        return f"({fmt(node[0])},{fmt(node[1])})"

    return fmt(tree.root) + ";"


def parse_newick(text: str) -> PhyloTree:
    """Parse a binary Newick string with bare integer leaves, e.g. ``((1,5),(2,(3,4)));``."""
    s = "".join(text.split())
    if s.endswith(";"):
        s = s[:-1]
    pos = 0

    def node():
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            left = node()
            if pos >= len(s) or s[pos] != ",":
                raise ValueError(f"expected ',' at {pos} in {text!r}")
            pos += 1
            right = node()
            if pos >= len(s) or s[pos] != ")":
                raise ValueError(f"expected ')' at {pos} in {text!r} (only binary trees are supported)")
            pos += 1
            return (left, right)
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"expected a leaf label at {pos} in {text!r}")
        return int(s[start:pos])

    root = node()
    if pos != len(s):
        raise ValueError(f"trailing characters in {text!r}")
    return PhyloTree(root)


# label-extension bijection


def dh_encode(tree: PhyloTree) -> Matching:
    """Matching of size n from a tree with n+1 leaves.

    Repeatedly take the sibling pair of labeled nodes under an unlabeled parent
    that contains the smallest label, give the parent the next free label, and
    record the pair.  The root's two children form the last pair.
    """
    m = tree.num_leaves
    label: Dict[Node, int] = {leaf: leaf for leaf in range(1, m + 1)}
    pending = [u for u in tree.internal_nodes() if u is not tree.root]
    pairs = []
    next_label = m + 1
    while pending:
        best = None
        for u in pending:
            a, b = label.get(u[0]), label.get(u[1])
            if a is not None and b is not None and (best is None or min(a, b) < best[0]):
                best = (min(a, b), u, (a, b))
        _, u, pair = best
        pending.remove(u)
        label[u] = next_label
        next_label += 1
        pairs.append(pair)
    root = tree.root
    pairs.append((label[root[0]], label[root[1]]))
    return Matching(tuple(pairs))


def dh_decode(x: Matching) -> PhyloTree:
    """Inverse of ``dh_encode``."""
    n = x.n
    node: Dict[int, Node] = {leaf: leaf for leaf in range(1, n + 2)}
    remaining = list(x.pairs)
    for new in range(n + 2, 2 * n + 1):
        eligible = [p for p in remaining if p[0] in node and p[1] in node]
        if not eligible:
            raise ValueError(f"not decodable: {x}")
        a, b = min(eligible, key=min)
        remaining.remove((a, b))
        node[new] = (node[a], node[b])
    (a, b), = remaining
    if a not in node or b not in node:
        raise ValueError(f"not decodable: {x}")
    return PhyloTree((node[a], node[b]))


def all_trees(num_leaves: int) -> Iterator[PhyloTree]:
    """Every rooted binary tree on leaves 1..num_leaves; there are (2m-3)!! of them."""

    def grow(node: Node, leaf: int) -> Iterator[Node]:
        yield (node, leaf)
        if not isinstance(node, int):
            for left in grow(node[0], leaf):
                yield (left, node[1])
            for right in grow(node[1], leaf):
                yield (node[0], right)

    def rec(m: int) -> Iterator[Node]:
        if m == 2:
            yield (1, 2)
            return
        for t in rec(m - 1):
            yield from grow(t, m)

    if num_leaves < 2:
        raise ValueError("need at least two leaves")
    for t in rec(num_leaves):
        yield PhyloTree(t)


def tree_count(num_leaves: int) -> int:
    out = 1
    for k in range(3, 2 * num_leaves - 2, 2):
        out *= k
    return out


def random_tree(num_leaves: int, seed: int) -> PhyloTree:
    """Uniform random tree: random leaf insertion order is uniform over topologies."""
    rng = random.Random(seed)
    root: Node = (1, 2)
    for leaf in range(3, num_leaves + 1):
        edges = []

        def collect(node, path):
            edges.append(path)
            if not isinstance(node, int):
                collect(node[0], path + (0,))
                collect(node[1], path + (1,))

        collect(root, ())
        path = rng.choice(edges)

        def insert(node, path):
            if not path:
                return (node, leaf)
            kids = list(node)
            kids[path[0]] = insert(kids[path[0]], path[1:])
            return tuple(kids)

        root = insert(root, path)
    return PhyloTree(root)


# embedding with local internal labels


def richman_labels(tree: PhyloTree) -> Dict[Node, int]:
    """Leaves keep their labels; an internal node gets ``n + max(min leaf left, min leaf right)``.

    Each internal label depends only on the leaves below it, and labels fill
    n+2..2n+1 for a tree with n+1 leaves.
    """
    n = tree.n
    labels: Dict[Node, int] = {}

    def walk(node):
        if isinstance(node, int):
            labels[node] = node
            return node
        lo_a, lo_b = walk(node[0]), walk(node[1])
        labels[node] = n + max(lo_a, lo_b)
        return min(lo_a, lo_b)

    walk(tree.root)
    return labels


def richman_embed(tree: PhyloTree) -> Matching:
    """Matching of size n+1: sibling labels paired, root label paired with 2n+2."""
    n = tree.n
    labels = richman_labels(tree)
    pairs = [(labels[u[0]], labels[u[1]]) for u in tree.internal_nodes()]
    pairs.append((labels[tree.root], 2 * n + 2))
    return Matching(tuple(pairs))


# NNI


@dataclass(frozen=True)
class NniMove:
    """At node u = (v, C) with v = (A, B): the result puts (B, C) beside A."""

    before: PhyloTree
    after: PhyloTree
    u: Node
    kept: Node
    moved: Node
    other: Node


def nni_moves(tree: PhyloTree) -> List[NniMove]:
    moves = []

    def rebuild(node, target, replacement):
        if node is target:
            return replacement
        if isinstance(node, int):
            return node
        return (rebuild(node[0], target, replacement), rebuild(node[1], target, replacement))

    for u in tree.internal_nodes():
        for v, c in ((u[0], u[1]), (u[1], u[0])):
            if isinstance(v, int):
                continue
            a, b = v
            for kept, moved in ((a, b), (b, a)):
                after = PhyloTree(rebuild(tree.root, u, (kept, (moved, c))))
                moves.append(NniMove(tree, after, u, kept, moved, c))
    return moves


def nni_neighbors(tree: PhyloTree) -> set:
    return {m.after for m in nni_moves(tree)}


def height(tree: Union[PhyloTree, Node]) -> int:
    """Edges on the longest root-to-leaf path."""
    node = tree.root if isinstance(tree, PhyloTree) else tree
    if isinstance(node, int):
        return 0
    return 1 + max(height(node[0]), height(node[1]))


def nni_distance(a: PhyloTree, b: PhyloTree, exact_limit_leaves: int = 8) -> Tuple[int, bool]:
    """``(value, is_lower_bound)``; bidirectional BFS up to the leaf limit, else the height gap."""
    if sorted(_leaves(a.root)) != sorted(_leaves(b.root)):
        raise ValueError("trees have different leaf sets")
    if a == b:
        return 0, False
    if a.num_leaves > exact_limit_leaves:
        return abs(height(a) - height(b)), True
    dist = [{a: 0}, {b: 0}]
    frontier = [[a], [b]]
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        nxt = []
        for t in frontier[side]:
            d = dist[side][t]
            for s in nni_neighbors(t):
                if s in dist[1 - side]:
                    return d + 1 + dist[1 - side][s], False
                if s not in dist[side]:
                    dist[side][s] = d + 1
                    nxt.append(s)
        frontier[side] = nxt
    raise AssertionError("NNI graph is connected")


def richman_nni_check(move: NniMove) -> Tuple[bool, int, List[Tuple[int, int]]]:
    """Realize an NNI move on embedded matchings with at most two label transpositions.

    Returns ``(ok, changed_pairs, transpositions)``.
    """
    before, after = move.before, move.after
    n = before.n
    lab_t = richman_labels(before)
    lab_new = richman_labels(after)
    v = (move.kept, move.moved) if (move.kept, move.moved) in lab_t else (move.moved, move.kept)
    new_u = canonical((move.moved, move.other))
    root_b = lab_t[move.moved]
    swaps = [(root_b, lab_new[new_u])]
    if lab_t[v] != lab_new[new_u]:
        swaps.append((lab_t[v], root_b))
    x = richman_embed(before)
    y = x
    for i, j in swaps:
        if i != j:
            y = act(transposition(i, j, 2 * n + 2), y)
    target = richman_embed(after)
    changed = differing_pairs(x, target)
    return y == target and changed <= 4, changed, swaps


# counterexamples


@dataclass
class NniCounterexample:
    n: int
    tree: PhyloTree
    neighbor: PhyloTree
    x: Matching
    y: Matching
    differing: int
    bound: int
    adjacent: bool


def far_encodings_of_adjacent_trees(n: int) -> NniCounterexample:
    """NNI-adjacent trees whose encoded matchings sit far apart.

    A caterpillar R[1, [2, [n+1, [n, ..., [5, [3, 4]]]]]] and the tree obtained
    by one NNI at the root that pairs leaves 1 and 2.
    """
    if n < 7:
        raise ValueError("construction needs n >= 7")
    chain: Node = (3, 4)
    for leaf in range(5, n + 2):
        chain = (leaf, chain)
    tree = PhyloTree((1, (2, chain)))
    neighbor = PhyloTree(((1, 2), chain))
    x, y = dh_encode(tree), dh_encode(neighbor)
    adjacent = neighbor in nni_neighbors(tree)
    bound = distance_lower_bound(x, y)
    result = NniCounterexample(n, tree, neighbor, x, y, differing_pairs(x, y), bound, adjacent)
    if not adjacent or 2 * bound < n - 1:
        raise AssertionError(f"construction failed at n={n}")
    return result


@dataclass
class HeightCounterexample:
    n: int
    x1: Matching
    sigma: Tuple[int, ...]
    x2: Matching
    tree1: PhyloTree
    tree2: PhyloTree
    height1: int
    height2: int

    @property
    def gap(self) -> int:
        return self.height1 - self.height2


def far_trees_of_adjacent_matchings(n: int) -> HeightCounterexample:
    """A transposition of matchings whose decoded trees differ a lot in height."""
    if n < 9:
        raise ValueError("construction needs n >= 9")
    pairs = [(3, 4)] + [(k, n - 3 + k) for k in range(5, n + 2)] + [(2, 2 * n - 1), (1, 2 * n)]
    x1 = Matching(tuple(pairs))
    sigma = transposition(1, 2 * n - 1, 2 * n)
    x2 = act(sigma, x1)
    t1, t2 = dh_decode(x1), dh_decode(x2)
    out = HeightCounterexample(n, x1, sigma, x2, t1, t2, height(t1), height(t2))
    if 2 * out.gap < n - 4:
        raise AssertionError(f"construction failed at n={n}")
    return out


def tree_fraction(n: int) -> Fraction:
    """4n / ((2n+2)(2n+1))."""
    if n < 1:
        raise ValueError("n must be positive")
    return Fraction(4 * n, (2 * n + 2) * (2 * n + 1))


def embedding_image_fraction(n: int) -> Fraction:
    """Exhaustive share of matchings of size n+1 hit by the embedding of trees with n+1 leaves."""
    from matchkern.matching import matching_count

    image = {richman_embed(t) for t in all_trees(n + 1)}
    return Fraction(len(image), matching_count(n + 1))


__all__ = [
    "HeightCounterexample",
    "NniCounterexample",
    "NniMove",
    "PhyloTree",
    "all_trees",
    "canonical",
    "far_encodings_of_adjacent_trees",
    "far_trees_of_adjacent_matchings",
    "dh_decode",
    "dh_encode",
    "embedding_image_fraction",
    "height",
    "nni_distance",
    "nni_moves",
    "nni_neighbors",
    "parse_newick",
    "random_tree",
    "richman_embed",
    "richman_labels",
    "richman_nni_check",
    "to_newick",
    "tree_count",
    "tree_fraction",
]
