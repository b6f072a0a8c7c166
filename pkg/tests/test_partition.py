from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from matchkern.partition import (
    Heuristic,
    as_partition,
    conjugate,
    double,
    enumerate_partitions,
    from_json,
    is_partition,
    lex_compare,
    partition_count,
    select_truncation,
    to_json,
    to_key,
)


def _brute_count(n, max_part=None):
    max_part = n if max_part is None else max_part
    if n == 0:
        return 1
    return sum(_brute_count(n - k, k) for k in range(1, min(n, max_part) + 1))


def test_enumerate_small():
    assert enumerate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert enumerate_partitions(0) == [()]
    assert len(enumerate_partitions(10)) == 42


def test_enumerate_descending_lex():
    parts = enumerate_partitions(12)
    assert all(a > b for a, b in zip(parts, parts[1:]))
    assert all(is_partition(p) and sum(p) == 12 for p in parts)


@pytest.mark.parametrize("n", range(0, 31))
def test_count_matches_recurrence(n):
    assert len(enumerate_partitions(n)) == partition_count(n)


@pytest.mark.parametrize("n", range(0, 16))
def test_count_matches_brute_force(n):
    assert partition_count(n) == _brute_count(n)


def test_conjugate_examples():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate((5,)) == (1,) * 5
    assert conjugate((2, 2)) == (2, 2)


@pytest.mark.parametrize("n", range(0, 21))
def test_conjugate_involution(n):
    for rho in enumerate_partitions(n):
        assert conjugate(conjugate(rho)) == rho


def test_double():
    assert double((2, 1)) == (4, 2)
    assert double(()) == ()
    assert double((1, 1, 1)) == (2, 2, 2)


def test_lex_compare():
    assert lex_compare((3, 1), (2, 2)) == 1
    assert lex_compare((2, 1, 1), (2, 2)) == -1
    assert lex_compare((4,), (4,)) == 0
    with pytest.raises(ValueError):
        lex_compare((3,), (2, 2))


def test_truncation_examples():
    assert set(select_truncation(5, 2)) == {(5,), (4, 1)}
    assert set(select_truncation(5, 3)) == {(5,), (4, 1), (3, 2)}
    assert set(select_truncation(5, 7)) == set(enumerate_partitions(5))


@pytest.mark.parametrize("heuristic", list(Heuristic))
def test_truncation_nested_and_complete(heuristic):
    n = 9
    total = partition_count(n)
    previous = set()
    for k in range(1, total + 1):
        current = set(select_truncation(n, k, heuristic))
        assert len(current) == k
        assert previous <= current
        previous = current
    assert previous == set(enumerate_partitions(n))


def test_truncation_rejects_bad_size():
    with pytest.raises(ValueError):
        select_truncation(5, 0)
    with pytest.raises(ValueError):
        select_truncation(5, 8)


def test_as_partition_canonicalizes():
    assert as_partition([1, 3, 2]) == (3, 2, 1)
    with pytest.raises(ValueError):
        as_partition([2, 0])


def test_serialization():
    rho = (4, 2, 1)
    assert from_json(to_json(rho)) == rho
    assert to_key(rho) == "4.2.1"


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=8))
def test_conjugate_preserves_size(parts):
    rho = as_partition(parts)
    c = conjugate(rho)
    assert is_partition(c) and sum(c) == sum(rho)
    assert len(c) == rho[0]
