from fractions import Fraction
from math import factorial

import pytest

from matchkern.partition import enumerate_partitions
from matchkern.sym_group import (
    character,
    class_size,
    dimension,
    laplacian_eigenvalue,
    transposition_character,
)


def test_dimension_examples():
    assert dimension((5,)) == 1
    assert dimension((2, 2)) == 2
    assert dimension((1, 1, 1, 1)) == 1


@pytest.mark.parametrize("m", range(1, 10))
def test_dimensions_square_sum(m):
    assert sum(dimension(r) ** 2 for r in enumerate_partitions(m)) == factorial(m)


def test_character_examples():
    assert character((1, 1), (2,)) == -1
    assert character((3, 1), (2, 1, 1)) == 1
    for mu in enumerate_partitions(5):
        assert character((5,), mu) == 1


def _fixed_points_minus_one(m, mu):
    return sum(1 for p in mu if p == 1) - 1


@pytest.mark.parametrize("m", range(2, 9))
def test_standard_character(m):
    for mu in enumerate_partitions(m):
        assert character((m - 1, 1), mu) == _fixed_points_minus_one(m, mu)


@pytest.mark.parametrize("m", range(1, 13))
def test_character_at_identity_is_dimension(m):
    for rho in enumerate_partitions(m):
        assert character(rho, (1,) * m) == dimension(rho)


@pytest.mark.parametrize("m", range(1, 8))
def test_row_orthogonality(m):
    parts = enumerate_partitions(m)
    for a in parts:
        for b in parts:
            total = sum(class_size(mu) * character(a, mu) * character(b, mu) for mu in parts)
            assert total == (factorial(m) if a == b else 0)


def test_class_sizes_sum():
    for m in range(1, 10):
        assert sum(class_size(mu) for mu in enumerate_partitions(m)) == factorial(m)


def test_eigenvalue_examples():
    assert laplacian_eigenvalue((4,)) == 0
    assert laplacian_eigenvalue((3, 1)) == 4
    assert laplacian_eigenvalue((1, 1, 1, 1)) == 12
    assert laplacian_eigenvalue((2, 2)) == 6


def _content_sum(rho):
    return sum(j - i for i, row in enumerate(rho) for j in range(row))


@pytest.mark.parametrize("m", range(2, 13))
def test_eigenvalue_matches_content_sum(m):
    # lambda = C(m,2) - sum of contents, an independent closed form
    for rho in enumerate_partitions(m):
        assert laplacian_eigenvalue(rho) == Fraction(m * (m - 1) // 2 - _content_sum(rho))
        assert transposition_character(rho) == character(rho, (2,) + (1,) * (m - 2))


@pytest.mark.parametrize("m", range(2, 17, 2))
def test_zero_eigenvalue_is_unique(m):
    zeros = [rho for rho in enumerate_partitions(m) if laplacian_eigenvalue(rho) == 0]
    assert zeros == [(m,)]


def test_rejects_non_partitions():
    with pytest.raises(ValueError):
        dimension((1, 2))
