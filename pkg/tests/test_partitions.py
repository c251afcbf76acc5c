from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz_lab.partitions import (
    EMPTY, Partition, as_partition, colength, conjugate, contents, dim, frobenius_coords,
    hook_product, hooks, identity_class, multiplicities, partitions_of, partitions_up_to, z_mu,
)
from oracles import partition_count

some_partition = st.integers(0, 12).flatmap(lambda n: st.sampled_from(partitions_of(n)))


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, 0])
    assert Partition() == EMPTY and len(EMPTY) == 0


def test_parse_and_print():
    p = Partition.parse("[3, 1]")
    assert p == (3, 1) and str(p) == "[3,1]" and repr(p) == "Partition([3,1])"
    assert Partition.parse("[]") == EMPTY
    for bad in ("3,1", "[1,3]", "[a]", "[2"):
        with pytest.raises(ValueError):
            Partition.parse(bad)


def test_enumeration_order_and_small_cases():
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert partitions_of(0) == [EMPTY]
    assert len(partitions_up_to(4)) == 1 + 1 + 2 + 3 + 5


@pytest.mark.parametrize("n", range(31))
def test_partition_count_matches_pentagonal_recurrence(n):
    parts = partitions_of(n)
    assert len(parts) == partition_count(n)
    assert len(set(parts)) == len(parts)
    assert all(sum(p) == n for p in parts)


def test_spec_examples():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert hook_product((2, 1)) == 3
    assert z_mu((2, 1, 1)) == 4
    assert frobenius_coords((3, 1)) == ((2,), (1,))
    assert colength((2, 1, 1)) == 1
    assert contents((2, 1)) == [0, 1, -1]
    assert identity_class(3) == (1, 1, 1)
    assert multiplicities((2, 1, 1)) == {2: 1, 1: 2}


@settings(max_examples=300, deadline=None)
@given(some_partition)
def test_partition_invariants(lam):
    n = sum(lam)
    assert conjugate(conjugate(lam)) == lam
    assert hook_product(lam) * dim(lam) == factorial(n)
    assert sorted(hooks(lam)) == sorted(hooks(conjugate(lam)))
    assert sum(contents(lam)) == -sum(contents(conjugate(lam)))
    a, b = frobenius_coords(lam)
    assert sum(a) + sum(b) + len(a) == n
    assert colength(lam) == n - len(lam)


@pytest.mark.parametrize("n", range(1, 9))
def test_class_equation(n):
    assert sum(factorial(n) // z_mu(mu) for mu in partitions_of(n)) == factorial(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_sum_of_squared_dimensions(n):
    assert sum(dim(lam) ** 2 for lam in partitions_of(n)) == factorial(n)


def test_as_partition_coercion():
    # sequences are coerced by sorting; the Partition constructor itself is strict
    assert as_partition([1, 2]) == Partition([2, 1])
    assert as_partition("[2,1]") == Partition([2, 1])
    with pytest.raises(ValueError):
        as_partition([2, 0])
