import random
from fractions import Fraction
from math import factorial

import pytest

from matchkern import accel
from matchkern.matching import (
    act,
    base_point,
    generalized_distance,
    random_permutation,
)
from matchkern.partition import double, enumerate_partitions
from matchkern.sym_group import character
from matchkern.zsf import (
    AVERAGING_MAX_N,
    EXPLICIT_MAX_N,
    Backend,
    CapabilityError,
    coset_representative,
    expected_norm,
    weighted_inner_product,
    zsf,
    zsf_averaging,
    zsf_explicit,
    zsf_table,
    zsf_zonal_polynomial,
)

BACKENDS = ["zp", "explicit", "avg"]


@pytest.mark.parametrize("backend", BACKENDS)
def test_examples(backend):
    assert zsf((1, 1), (2,), backend) == Fraction(-1, 2)
    assert zsf_table((1, 1), backend) == {(2,): Fraction(-1, 2), (1, 1): 1}
    for n in range(1, 5):
        for mu in enumerate_partitions(n):
            assert zsf((n,), mu, backend) == 1
        for rho in enumerate_partitions(n):
            assert zsf(rho, (1,) * n, backend) == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_backends_agree(n):
    for rho in enumerate_partitions(n):
        for mu in enumerate_partitions(n):
            a = zsf_zonal_polynomial(rho, mu)
            assert zsf_explicit(rho, mu) == a
            assert zsf_averaging(rho, mu) == a


def test_capability_guards():
    with pytest.raises(CapabilityError):
        zsf_explicit((EXPLICIT_MAX_N + 1,), (EXPLICIT_MAX_N + 1,))
    with pytest.raises(CapabilityError):
        zsf_averaging((AVERAGING_MAX_N + 1,), (AVERAGING_MAX_N + 1,))
    with pytest.raises(ValueError):
        zsf((3,), (2,))


def test_backend_aliases():
    assert Backend.parse("zonal_polynomial") is Backend.ZP
    assert Backend.parse("explicit_formula") is Backend.EXPLICIT
    assert Backend.parse("character_averaging") is Backend.AVG
    with pytest.raises(ValueError):
        Backend.parse("nope")


@pytest.mark.parametrize("n", range(1, 11))
def test_orthogonality(n):
    parts = enumerate_partitions(n)
    for rho in parts:
        for sigma in parts:
            want = expected_norm(rho) if rho == sigma else 0
            assert weighted_inner_product(rho, sigma) == want


@pytest.mark.parametrize("n", range(1, 13))
def test_values_bounded(n):
    for rho in enumerate_partitions(n):
        assert all(abs(v) <= 1 for v in zsf_table(rho).values())


@pytest.mark.parametrize("n", range(2, 6))
def test_independent_of_representative(n):
    # the coset average of chi^{2 rho} over g H depends only on d(x0, g x0)
    rng = random.Random(n)
    order = 2**n * factorial(n)
    x0 = base_point(n)
    for trial in range(6):
        g = random_permutation(2 * n, rng.randrange(10**6))
        mu = generalized_distance(x0, act(g, x0))
        counts = accel.coset_cycle_type_counts([v - 1 for v in g], n)
        for rho in enumerate_partitions(n):
            total = sum(c * character(double(rho), ct) for ct, c in counts.items())
            assert Fraction(total, order) == zsf_zonal_polynomial(rho, mu)


def test_coset_representative_distance():
    for n in range(1, 7):
        for mu in enumerate_partitions(n):
            sigma = [v + 1 for v in coset_representative(mu)]
            assert generalized_distance(base_point(n), act(sigma, base_point(n))) == mu


def test_table_order_and_size():
    table = zsf_table((3, 1, 1))
    assert list(table) == enumerate_partitions(5)
