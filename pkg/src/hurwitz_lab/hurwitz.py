"""Classical and weighted Hurwitz numbers by every available route.

Routes for H^d_G(μ, ν):

* ``CHARACTER``  — [β^d] Σ_λ r_λ(0) χ_λ(μ) χ_λ(ν) / (z_μ z_ν);
* ``DEFINITION`` — Σ over tuples of non-identity branch profiles with total
  co-length d of W_G(tuple) · H(tuple, μ, ν) (numeric c only);
* ``DETERMINANT`` — solving the determinant coefficient system (module taudet);
* ``CAYLEY``     — (1/n!) Σ_{|λ|=d} G_λ m^λ_{μν} over monotone paths;
* ``MATRIX_D0``  — d = 0 only: the coefficient system whose right side counts
  non-negative integer matrices with prescribed row and column sums.

>>> hurwitz_character([(3,), (3,)])
Fraction(1, 3)
>>> hurwitz_character([(2, 1), (2, 1), (3,)])
Fraction(1, 1)
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .characters import mn_character
from .errors import EmptyProfileList, TruncationError, WeightMismatch
from .exact_ring import ONE, ZERO, LaurentPoly, as_poly
from .partitions import Partition, as_partition, colength, hook_product, partitions_of, z_mu
from .permgroup import monotone_path_table
from .weights import WeightFunc, content_product, g_lambda, rho, tuple_weight


class Route(enum.Enum):
    CHARACTER = "character"
    DEFINITION = "definition"
    DETERMINANT = "determinant"
    CAYLEY = "cayley"
    MATRIX_D0 = "matrix_d0"


@dataclass(frozen=True)
class WeightedHurwitzResult:
    mu: Partition
    nu: Partition
    d: int
    value: LaurentPoly
    route: Route

    def to_json(self) -> dict:
        return {"mu": str(self.mu), "nu": str(self.nu), "d": self.d, "route": self.route.value,
                "value": str(self.value)}


def _profiles(profiles) -> list:
    profiles = [as_partition(p) for p in profiles]
    if not profiles:
        raise EmptyProfileList("at least one profile is required")
    n = sum(profiles[0])
    if any(sum(p) != n for p in profiles):
        raise WeightMismatch("all profiles must have equal weight")
    return profiles


def hurwitz_character(profiles) -> Fraction:
    """Frobenius–Schur: Σ_λ h(λ)^{k−2} Π_i χ_λ(μ^(i)) / z_{μ^(i)}."""
    profiles = _profiles(profiles)
    n = sum(profiles[0])
    k = len(profiles)
    total = Fraction(0)
    for lam in partitions_of(n):
        term = Fraction(hook_product(lam)) ** (k - 2)
        for p in profiles:
            chi = mn_character(lam, p)
            if not chi:
                break
            term *= Fraction(chi, z_mu(p))
        else:
            total += term
    return total


def _check_pair(w: WeightFunc, mu, nu, d: int):
    mu, nu = as_partition(mu), as_partition(nu)
    if d < 0:
        raise ValueError("d must be non-negative")
    if d > w.D:
        raise TruncationError(f"d={d} exceeds the truncation order D={w.D}")
    return mu, nu


def weighted_hurwitz_character(w: WeightFunc, mu, nu, d: int) -> LaurentPoly:
    """[β^d] Σ_λ r_λ(0) χ_λ(μ) χ_λ(ν) / (z_μ z_ν).

    >>> str(weighted_hurwitz_character(WeightFunc.formal(2), (1, 1, 1), (3,), 2))
    '1/3*G1^2 + 1/3*G2'
    """
    mu, nu = _check_pair(w, mu, nu, d)
    if sum(mu) != sum(nu):
        return ZERO
    total = ZERO
    for lam in partitions_of(sum(mu)):
        c = mn_character(lam, mu) * mn_character(lam, nu)
        if c:
            total = total + content_product(w, lam, 0).coeff(d) * Fraction(c, z_mu(mu) * z_mu(nu))
    return total


@lru_cache(maxsize=None)
def _branch_tuples(n: int, d: int) -> tuple:
    """Ordered tuples of non-identity partitions of n with total co-length d."""
    cands = [p for p in partitions_of(n) if colength(p) > 0]
    out = []

    def extend(prefix, left):
        if left == 0:
            out.append(tuple(prefix))
            return
        for p in cands:
            if colength(p) <= left:
                extend(prefix + [p], left - colength(p))

    extend([], d)
    return tuple(out)


def weighted_hurwitz_definition(w: WeightFunc, mu, nu, d: int) -> Fraction:
    """Σ_k Σ_{(μ^(1)..μ^(k))} W_G(l*(μ^(1)),…) · H(μ^(1),…,μ^(k), μ, ν).

    The empty tuple (k = 0) has weight 1, so d = 0 gives H(μ, ν).
    """
    mu, nu = _check_pair(w, mu, nu, d)
    if sum(mu) != sum(nu):
        return Fraction(0)
    total = Fraction(0)
    for tup in _branch_tuples(sum(mu), d):
        h = hurwitz_character(list(tup) + [mu, nu])
        if h:
            total += tuple_weight(w, [colength(p) for p in tup]) * h
    return total


def weighted_hurwitz_cayley(w: WeightFunc, mu, nu, d: int) -> LaurentPoly:
    """(1/n!) Σ_{|λ|=d} G_λ m^λ_{μν}."""
    mu, nu = _check_pair(w, mu, nu, d)
    if sum(mu) != sum(nu):
        return ZERO
    n = sum(mu)
    table = monotone_path_table(n, d)
    total = ZERO
    for lam in partitions_of(d):
        m = table.get((lam, mu, nu), 0)
        if m:
            total = total + g_lambda(w, lam) * Fraction(m, factorial(n))
    return total


def weighted_hurwitz_determinant(w: WeightFunc, mu, nu, d: int, N: int | None = None) -> LaurentPoly:
    from .taudet import MiwaContext, solve_tep5_system

    mu, nu = _check_pair(w, mu, nu, d)
    if sum(mu) != sum(nu):
        return ZERO
    n = sum(mu)
    N = max(n, 1) if N is None else N
    return solve_tep5_system(MiwaContext(N, n), w, n, d)[(mu, nu)]


# ---------------------------------------------------------------------------
# d = 0: contingency matrices
# ---------------------------------------------------------------------------

def count_contingency(row_sums, col_sums) -> int:
    """Number of non-negative integer matrices with the given row/column sums."""
    rows, cols = tuple(row_sums), tuple(col_sums)
    if sum(rows) != sum(cols):
        return 0

    @lru_cache(maxsize=None)
    def go(i: int, remaining: tuple) -> int:
        if i == len(rows):
            return 1 if not any(remaining) else 0
        total = 0
        for row in _compositions_bounded(rows[i], remaining):
            total += go(i + 1, tuple(r - x for r, x in zip(remaining, row)))
        return total

    return go(0, cols)


def _compositions_bounded(total: int, bounds: tuple):
    if not bounds:
        if total == 0:
            yield ()
        return
    for x in range(min(total, bounds[0]) + 1):
        for rest in _compositions_bounded(total - x, bounds[1:]):
            yield (x,) + rest


def _weak_compositions(n: int, parts: int):
    if parts == 0:
        if n == 0:
            yield ()
        return
    for x in range(n, -1, -1):
        for rest in _weak_compositions(n - x, parts - 1):
            yield (x,) + rest


def _p_monomial_coeff(omega, exps) -> int:
    """Coefficient of Π x_j^{exps_j} in p_ω(x_1..x_N)."""
    from .taudet import _assignments

    return _assignments(tuple(omega), tuple(exps))


@dataclass
class D0MatrixRow:
    a: tuple
    b: tuple
    coefficient: Fraction
    matrices: int

    @property
    def ok(self) -> bool:
        return self.coefficient == self.matrices


def hurwitz_d0_matrix_count(n: int, table: dict | None = None) -> list:
    """Per-monomial comparison behind the d = 0 matrix representation.

    For every pair of weak compositions a, b of n into n parts, compares the
    coefficient of Π_j ν_j^{−a_j} Π_i μ_i^{−b_i} in Σ H^0(ω,σ) p_ω(t) p_σ(s)
    (n Miwa variables per alphabet) with the number of n×n non-negative
    integer matrices with column sums a and row sums b.  ``table`` maps
    (ω, σ) → H^0(ω,σ); by default it comes from the character route.
    """
    parts = partitions_of(n)
    if table is None:
        w = WeightFunc.from_g([1], 0)
        table = {(om, sg): as_poly(weighted_hurwitz_character(w, om, sg, 0)).constant_value()
                 for om in parts for sg in parts}
    rows = []
    comps = list(_weak_compositions(n, n))
    for a in comps:
        for b in comps:
            coef = Fraction(0)
            for (om, sg), h in table.items():
                if h:
                    coef += Fraction(h) * _p_monomial_coeff(om, a) * _p_monomial_coeff(sg, b)
            rows.append(D0MatrixRow(a, b, coef, count_contingency(b, a)))
    return rows


def weighted_hurwitz_matrix_d0(w: WeightFunc, mu, nu, d: int) -> Fraction:
    """H^0(μ,ν) by solving the coefficient system whose right side is the
    contingency-matrix count (d must be 0)."""
    from .taudet import power_to_monomial_matrix
    from .exact_ring import rational_solve

    mu, nu = _check_pair(w, mu, nu, d)
    if d != 0:
        raise ValueError("the MATRIX_D0 route only computes d = 0")
    if sum(mu) != sum(nu):
        return Fraction(0)
    n = sum(mu)
    rows, cols, M = power_to_monomial_matrix(n, n)
    R = [[count_contingency(tuple(b) + (0,) * (n - len(b)), tuple(a) + (0,) * (n - len(a)))
          for b in rows] for a in rows]
    X = rational_solve(M, R)
    H = rational_solve(M, [list(r) for r in zip(*X)])
    H = [list(r) for r in zip(*H)]
    return H[cols.index(mu)][cols.index(nu)].constant_value()


# ---------------------------------------------------------------------------
# facade
# ---------------------------------------------------------------------------

_ROUTES = {
    Route.CHARACTER: weighted_hurwitz_character,
    Route.DEFINITION: weighted_hurwitz_definition,
    Route.DETERMINANT: weighted_hurwitz_determinant,
    Route.CAYLEY: weighted_hurwitz_cayley,
    Route.MATRIX_D0: weighted_hurwitz_matrix_d0,
}


def applicable_routes(w: WeightFunc, n: int, d: int) -> list:
    routes = [Route.CHARACTER, Route.DETERMINANT]
    if w.c_params is not None and n <= 5 and d <= 3:
        routes.append(Route.DEFINITION)
    if n <= 6 and d <= 4:
        routes.append(Route.CAYLEY)
    if d == 0 and n <= 4:
        routes.append(Route.MATRIX_D0)
    return routes


def weighted_hurwitz(route, w: WeightFunc, mu, nu, d: int) -> WeightedHurwitzResult:
    """Dispatch H^d_G(μ,ν) to one route."""
    route = Route(route) if not isinstance(route, Route) else route
    mu, nu = as_partition(mu), as_partition(nu)
    value = as_poly(_ROUTES[route](w, mu, nu, d))
    return WeightedHurwitzResult(mu, nu, d, value, route)


def coefficient_sum(w: WeightFunc, n: int, d: int) -> LaurentPoly:
    """Σ_{|ω|=|σ|=n} H^d(ω,σ) by the character route."""
    parts = partitions_of(n)
    total = ZERO
    for om in parts:
        for sg in parts:
            total = total + weighted_hurwitz_character(w, om, sg, d)
    return total


def coefficient_sum_prediction(w: WeightFunc, n: int, d: int, upper: int | None = None) -> LaurentPoly:
    """[β^d] Π_{k=1}^{upper} G(βk); ``upper`` defaults to n − 1 (i.e. ρ_{n−1})."""
    upper = n - 1 if upper is None else upper
    return rho(w, max(upper, 0)).coeff(d) if upper >= 0 else (ONE if d == 0 else ZERO)
