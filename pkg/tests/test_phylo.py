import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchkern.matching import Matching, all_matchings, generalized_distance, matching_count, random_matching
from matchkern.phylo import (
    PhyloTree,
    all_trees,
    dh_decode,
    dh_encode,
    embedding_image_fraction,
    far_encodings_of_adjacent_trees,
    far_trees_of_adjacent_matchings,
    height,
    nni_distance,
    nni_moves,
    nni_neighbors,
    parse_newick,
    random_tree,
    richman_embed,
    richman_nni_check,
    to_newick,
    tree_count,
    tree_fraction,
)

EXAMPLE_TREE = "(((1,5),4),(2,3));"
EXAMPLE_MATCHING = Matching(((1, 5), (2, 3), (4, 6), (7, 8)))


def test_encode_example():
    assert dh_encode(parse_newick(EXAMPLE_TREE)) == EXAMPLE_MATCHING
    assert dh_encode(PhyloTree((1, 2))) == Matching(((1, 2),))


def test_decode_example():
    assert to_newick(dh_decode(EXAMPLE_MATCHING)) == EXAMPLE_TREE
    assert dh_decode(Matching(((1, 2),))) == PhyloTree((1, 2))


@pytest.mark.parametrize("leaves", range(2, 8))
def test_encode_roundtrip_all_trees(leaves):
    trees = list(all_trees(leaves))
    assert len(trees) == len(set(trees)) == tree_count(leaves)
    for t in trees:
        assert dh_decode(dh_encode(t)) == t


@pytest.mark.parametrize("n", range(1, 7))
def test_bijection_onto_matchings(n):
    images = {dh_encode(t) for t in all_trees(n + 1)}
    assert images == set(all_matchings(n))


def test_decode_roundtrip_random():
    rng = random.Random(0)
    for trial in range(10_000):
        x = random_matching(rng.randint(1, 10), trial)
        assert dh_encode(dh_decode(x)) == x


def test_newick_parsing():
    t = parse_newick(" ((2, 1),(3,(5,4))) ; ")
    assert to_newick(t) == "((1,2),(3,(4,5)));"
    for bad in ["((1,2);", "(1,2,3);", "((1,3),2);x", "(1,);"]:
        with pytest.raises(ValueError):
            parse_newick(bad)
    with pytest.raises(ValueError):
        parse_newick("((1,4),2);")


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 14), st.integers(0, 10**6))
def test_newick_roundtrip(leaves, seed):
    t = random_tree(leaves, seed)
    assert parse_newick(to_newick(t)) == t
    assert t.num_leaves == leaves


def test_nni_three_leaves():
    trees = list(all_trees(3))
    for t in trees:
        assert nni_neighbors(t) == set(trees) - {t}


def test_nni_properties():
    for trial in range(200):
        t = random_tree(3 + trial % 10, trial)
        nb = nni_neighbors(t)
        assert t not in nb
        for s in nb:
            assert abs(height(s) - height(t)) <= 1
            assert t in nni_neighbors(s)


def test_nni_distance():
    t = random_tree(6, 1)
    assert nni_distance(t, t) == (0, False)
    s = next(iter(nni_neighbors(t)))
    assert nni_distance(t, s) == (1, False)
    a, b = random_tree(6, 2), random_tree(6, 3)
    assert nni_distance(a, b) == nni_distance(b, a)


def test_embedding_small():
    x = richman_embed(PhyloTree((1, 2)))
    assert x.n == 2
    assert any(4 in p for p in x.pairs)


@pytest.mark.parametrize("leaves", range(2, 7))
def test_embedding_injective(leaves):
    images = [richman_embed(t) for t in all_trees(leaves)]
    assert len(set(images)) == len(images)


@pytest.mark.parametrize("leaves", range(3, 8))
def test_embedding_nni_exhaustive(leaves):
    for t in all_trees(leaves):
        for move in nni_moves(t):
            ok, changed, swaps = richman_nni_check(move)
            assert ok and len(swaps) <= 2
            assert changed <= 4


def test_embedding_nni_random():
    rng = random.Random(1)
    for trial in range(1000):
        t = random_tree(rng.randint(3, 13), trial)
        ok, _, swaps = richman_nni_check(rng.choice(nni_moves(t)))
        assert ok and len(swaps) <= 2


def test_adjacent_trees_far_encodings_example():
    c = far_encodings_of_adjacent_trees(8)
    assert {c.x, c.y} == {
        Matching(((1, 16), (2, 15), (3, 4), (5, 10), (6, 11), (7, 12), (8, 13), (9, 14))),
        Matching(((1, 2), (3, 4), (5, 11), (6, 12), (7, 13), (8, 14), (9, 15), (10, 16))),
    }
    assert c.adjacent and c.bound >= 4


@pytest.mark.parametrize("n", [7, 8, 12, 15])
def test_adjacent_trees_far_encodings(n):
    c = far_encodings_of_adjacent_trees(n)
    assert c.adjacent
    assert c.bound >= (n - 1) / 2
    if n == 15:
        assert c.bound >= 7


@pytest.mark.parametrize("n", [9, 10, 14])
def test_adjacent_matchings_far_trees(n):
    c = far_trees_of_adjacent_matchings(n)
    assert generalized_distance(c.x1, c.x2) == (2,) + (1,) * (n - 2)
    assert c.height1 == n
    assert c.height2 <= n / 2 + 2
    assert c.gap >= n / 2 - 2
    assert nni_distance(c.tree1, c.tree2)[0] >= n / 2 - 2


def test_counterexample_guards():
    with pytest.raises(ValueError):
        far_encodings_of_adjacent_trees(6)
    with pytest.raises(ValueError):
        far_trees_of_adjacent_matchings(8)


def test_tree_fraction():
    assert tree_fraction(1) == Fraction(1, 3)
    assert tree_fraction(5) == Fraction(5, 33)
    assert all(tree_fraction(n) <= Fraction(1, 3) for n in range(1, 50))


@pytest.mark.parametrize("n", range(1, 5))
def test_embedding_image_fraction(n):
    frac = embedding_image_fraction(n)
    assert frac == Fraction(tree_count(n + 1), matching_count(n + 1))
    assert frac <= tree_fraction(n)
