"""Symmetric-group characters and symmetric-function evaluations.

Characters use the Murnaghan–Nakayama rule on β-sets (bead positions
λ_i + L − i): removing a border strip of length r is moving one bead down by r
onto an empty position, with sign (−1)^(beads jumped over).

>>> mn_character((2, 1), (1, 1, 1))
2
>>> mn_character((1, 1, 1), (3,))
1
>>> vandermonde([1, 2, 3])
2
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import RepeatedPoint, WeightMismatch
from .exact_ring import LaurentPoly, _norm, rational_det
from .partitions import Partition, as_partition, partitions_of, z_mu


@lru_cache(maxsize=None)
def _mn(beads: frozenset, mu: tuple) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    total = 0
    for b in beads:
        t = b - r
        if t < 0 or t in beads:
            continue
        jumped = sum(1 for x in beads if t < x < b)
        total += (-1) ** jumped * _mn((beads - {b}) | {t}, rest)
    return total


def mn_character(lam, mu) -> int:
    """Irreducible character χ_λ(μ) (memoized)."""
    lam, mu = as_partition(lam), as_partition(mu)
    if sum(lam) != sum(mu):
        raise WeightMismatch(f"|{lam}| != |{mu}|")
    L = len(lam)
    beads = frozenset(lam[i] + L - 1 - i for i in range(L))
    return _mn(beads, tuple(mu))


class CharacterTable:
    """Lazy character table of S_n; ``table[λ, μ]`` is χ_λ(μ)."""

    def __init__(self, n: int):
        self.n = n
        self.partitions = partitions_of(n)

    def __getitem__(self, key) -> int:
        lam, mu = key
        return mn_character(lam, mu)

    @property
    def values(self) -> dict:
        return {(l, m): mn_character(l, m) for l in self.partitions for m in self.partitions}


def character_table(n: int) -> CharacterTable:
    return CharacterTable(n)


def _pow(x, e):
    if isinstance(x, LaurentPoly):
        return x ** e
    return Fraction(x) ** e


def power_sum_eval(mu, points):
    """p_μ = Π_r p_{μ_r} with p_r = Σ x_i^r at the given points.

    Returns a :class:`LaurentPoly` when any point is symbolic, otherwise an
    exact number.
    """
    mu = as_partition(mu)
    symbolic = any(isinstance(x, LaurentPoly) for x in points)
    result = LaurentPoly.const(1) if symbolic else 1
    for r in mu:
        pr = sum((_pow(x, r) for x in points), LaurentPoly.const(0) if symbolic else 0)
        result = result * pr
    return result if symbolic else _norm(Fraction(result))


def schur_via_characters(lam, points):
    """s_λ = Σ_μ χ_λ(μ) p_μ / z_μ evaluated at the points."""
    lam = as_partition(lam)
    symbolic = any(isinstance(x, LaurentPoly) for x in points)
    total = LaurentPoly.const(0) if symbolic else Fraction(0)
    for mu in partitions_of(sum(lam)):
        chi = mn_character(lam, mu)
        if chi:
            total = total + power_sum_eval(mu, points) * Fraction(chi, z_mu(mu))
    return total if symbolic else _norm(total)


def _check_distinct(points) -> None:
    if len(set(points)) != len(points):
        raise RepeatedPoint("evaluation points must be pairwise distinct")


def schur_bialternant(lam, points):
    """det(x_i^{λ_j+n−j}) / det(x_i^{n−j}) at distinct numeric points."""
    lam = as_partition(lam)
    pts = [Fraction(x) for x in points]
    _check_distinct(pts)
    n = len(pts)
    if len(lam) > n:
        return 0
    parts = list(lam) + [0] * (n - len(lam))
    num = rational_det([[x ** (parts[j] + n - 1 - j) for j in range(n)] for x in pts])
    den = rational_det([[x ** (n - 1 - j) for j in range(n)] for x in pts])
    return _norm(Fraction(num) / den)


def vandermonde(points):
    """Π_{i<j} (x_j − x_i) in the given index order."""
    symbolic = any(isinstance(x, LaurentPoly) for x in points)
    result = LaurentPoly.const(1) if symbolic else 1
    for i, j in combinations(range(len(points)), 2):
        result = result * (points[j] - points[i])
    return result if symbolic else _norm(Fraction(result))


def cauchy_schur_sum(lams, xs, ys):
    """Σ_λ s_λ(x) s_λ(y) over the given partitions (numeric or symbolic)."""
    return sum((schur_via_characters(l, xs) * schur_via_characters(l, ys) for l in lams), 0)


__all__ = [
    "CharacterTable", "character_table", "mn_character", "power_sum_eval",
    "schur_via_characters", "schur_bialternant", "vandermonde", "Partition",
]
