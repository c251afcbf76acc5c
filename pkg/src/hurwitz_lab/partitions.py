"""Integer partitions and their statistics.

A :class:`Partition` is an immutable tuple of weakly decreasing positive
integers.  Partitions order first by weight and then reverse-lexicographically,
so ``sorted(partitions_of(n)) == partitions_of(n)``.

>>> Partition.parse("[3,1,1]")
Partition([3,1,1])
>>> conjugate(Partition([3, 1]))
Partition([2,1,1])
>>> z_mu(Partition([2, 1])), colength(Partition([3])), hook_product(Partition([2, 2]))
(2, 2, 12)
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``Partition()`` is ∅."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the bracketed text form ``[3,1,1]`` (``[]`` is ∅)."""
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"partition must be written as [a,b,...]: {text!r}")
        body = s[1:-1].strip()
        if not body:
            return cls()
        try:
            parts = [int(x) for x in body.split(",")]
        except ValueError as exc:
            raise ValueError(f"bad partition {text!r}") from exc
        return cls(parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def _key(self):
        return (sum(self), tuple(-p for p in self), len(self))

    def __lt__(self, other):
        return self._key() < Partition._key(other)

    def __le__(self, other):
        return self._key() <= Partition._key(other)

    def __gt__(self, other):
        return self._key() > Partition._key(other)

    def __ge__(self, other):
        return self._key() >= Partition._key(other)

    def __eq__(self, other):
        return tuple.__eq__(self, other)

    def __ne__(self, other):
        return tuple.__ne__(self, other)

    __hash__ = tuple.__hash__

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    def __repr__(self) -> str:
        return f"Partition({self})"


EMPTY = Partition()


def as_partition(x) -> Partition:
    if isinstance(x, Partition):
        return x
    if isinstance(x, str):
        return Partition.parse(x)
    return Partition(sorted(x, reverse=True))


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _partitions_of(n: int) -> tuple:
    return tuple(Partition(p) for p in _partitions(n, n))


def partitions_of(n: int) -> list:
    """All partitions of ``n`` in reverse-lexicographic order ((n) first)."""
    if n < 0:
        return []
    return list(_partitions_of(n))


def partitions_up_to(n: int) -> list:
    return [p for k in range(n + 1) for p in _partitions_of(k)]


def conjugate(lam) -> Partition:
    lam = as_partition(lam)
    if not lam:
        return EMPTY
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def frobenius_coords(lam) -> tuple:
    """Frobenius coordinates (α, β) with α_i = λ_i − i, β_i = λ'_i − i."""
    lam = as_partition(lam)
    lc = conjugate(lam)
    d = sum(1 for i, p in enumerate(lam, 1) if p >= i)
    return (tuple(lam[i] - i - 1 for i in range(d)), tuple(lc[i] - i - 1 for i in range(d)))


def hooks(lam) -> list:
    lam = as_partition(lam)
    lc = conjugate(lam)
    return [lam[i] - j + lc[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def hook_product(lam) -> int:
    return prod(hooks(lam))


def dim(lam) -> int:
    """Dimension of the irreducible S_n representation indexed by λ."""
    lam = as_partition(lam)
    return factorial(sum(lam)) // hook_product(lam)


def multiplicities(mu) -> dict:
    return dict(Counter(as_partition(mu)))


def z_mu(mu) -> int:
    """Centralizer order Π_i m_i! i^{m_i}."""
    return prod(factorial(m) * i ** m for i, m in multiplicities(mu).items())


def colength(mu) -> int:
    mu = as_partition(mu)
    return sum(mu) - len(mu)


def contents(lam) -> list:
    """Contents j − i of the cells (i, j) of λ, row by row."""
    lam = as_partition(lam)
    return [j - i for i in range(len(lam)) for j in range(lam[i])]


def identity_class(n: int) -> Partition:
    return Partition([1] * n)
