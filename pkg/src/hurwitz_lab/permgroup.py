"""Concrete symmetric-group computations used as independent oracles.

Permutations are handled internally as 0-based image tuples; the public
:class:`Permutation` type uses the 1-based one-line form.  Products compose
right to left: ``(g*h)(x) = g(h(x))``.

>>> cycle_type(Permutation([2, 3, 1]))
Partition([3])
>>> hurwitz_bruteforce([(3,), (3,)])
Fraction(1, 3)
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import EmptyProfileList, WeightMismatch
from .partitions import Partition, as_partition, partitions_of


@dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..n: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        img = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b
        return cls(tuple(img))

    @property
    def n(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self.images[x - 1] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.images, 1):
            inv[x - 1] = i
        return Permutation(tuple(inv))


def _cycle_type0(g: tuple) -> Partition:
    n = len(g)
    seen = [False] * n
    lengths = []
    for i in range(n):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                k += 1
            lengths.append(k)
    return Partition(sorted(lengths, reverse=True))


def cycle_type(g) -> Partition:
    """Sorted cycle lengths (fixed points included)."""
    if isinstance(g, Permutation):
        return _cycle_type0(tuple(x - 1 for x in g.images))
    return _cycle_type0(tuple(g))


def _compose(g: tuple, h: tuple) -> tuple:
    return tuple(g[x] for x in h)


def _inverse(g: tuple) -> tuple:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def _representative(mu: Partition) -> tuple:
    img = []
    start = 0
    for part in mu:
        img.extend(range(start + 1, start + part))
        img.append(start)
        start += part
    return tuple(img)


@lru_cache(maxsize=None)
def class_elements(mu) -> tuple:
    """All elements of the conjugacy class μ, by conjugation closure of one representative."""
    mu = as_partition(mu)
    n = sum(mu)
    rep = _representative(mu)
    elems = {rep}
    frontier = [rep]
    gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                c = _compose(_compose(s, g), _inverse(s))
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return tuple(sorted(elems))


def hurwitz_bruteforce(profiles) -> Fraction:
    """(1/n!) · #{(h_1..h_k): h_1⋯h_k = id, cycle_type(h_i) = μ^(i)}.

    The first factor is fixed to a class representative and the count
    multiplied by the class size (conjugation invariance); the last factor is
    forced to be the inverse of the partial product.
    """
    profiles = [as_partition(p) for p in profiles]
    if not profiles:
        raise EmptyProfileList("at least one profile is required")
    n = sum(profiles[0])
    if any(sum(p) != n for p in profiles):
        raise WeightMismatch("all profiles must have equal weight")
    k = len(profiles)
    if k == 1:
        return Fraction(1, factorial(n)) if all(x == 1 for x in profiles[0]) else Fraction(0)
    first = _representative(profiles[0])
    middle = [class_elements(p) for p in profiles[1:-1]]
    last = profiles[-1]

    def count(prefix: tuple, depth: int) -> int:
        if depth == len(middle):
            return 1 if _cycle_type0(_inverse(prefix)) == last else 0
        return sum(count(_compose(prefix, h), depth + 1) for h in middle[depth])

    total = count(first, 0) * len(class_elements(profiles[0]))
    return Fraction(total, factorial(n))


@lru_cache(maxsize=None)
def monotone_path_table(n: int, d: int) -> dict:
    """All counts m^λ_{μν} for |λ| = d in S_n, as ``{(λ, μ, ν): count}``.

    A path is a sequence of transpositions (a_i b_i), a_i < b_i, with
    b_1 ≤ … ≤ b_d, applied by right multiplication to a start g ∈ C_μ; its
    signature λ is the sorted multiset of run lengths of equal b-values.  Runs
    with the same b are words in the Jucys–Murphy generators (a b), a < b, so
    the enumeration walks b = 2..n choosing a run length for each.
    """
    table: dict = defaultdict(int)
    for mu in partitions_of(n):
        start = {g: 1 for g in class_elements(mu)}

        def walk(b: int, remaining: int, state: dict, runs: tuple):
            if b > n or remaining == 0:
                if remaining:
                    return
                lam = Partition(sorted((r for r in runs if r), reverse=True))
                for g, cnt in state.items():
                    table[(lam, mu, _cycle_type0(g))] += cnt
                return
            cur = state
            for k in range(remaining + 1):
                walk(b + 1, remaining - k, cur, runs + (k,))
                if k == remaining:
                    break
                nxt: dict = defaultdict(int)
                for g, cnt in cur.items():
                    for a in range(b - 1):
                        h = list(g)
                        h[a], h[b - 1] = h[b - 1], h[a]
                        nxt[tuple(h)] += cnt
                cur = nxt

        walk(2, d, start, ())
    return dict(table)


def monotone_paths(lam, mu, nu) -> int:
    """m^λ_{μν}: monotone λ-signature paths from C_μ into C_ν."""
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if sum(mu) != sum(nu):
        raise WeightMismatch(f"|{mu}| != |{nu}|")
    return monotone_path_table(sum(mu), sum(lam)).get((lam, mu, nu), 0)
