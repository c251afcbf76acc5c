"""Determinant representation of the weighted Hurwitz generating function.

With Miwa variables t_k = (1/k) Σ_j ν_j^{-k}, s_k = (1/k) Σ_i μ_i^{-k} in N
variables each,

    Σ_{d,n} β^d Σ_{|ω|=|σ|=n} H^d(ω,σ) p_ω(t) p_σ(s)
        = r_0(−N) det_{i,j}( Σ_{l≥−N} ν_j^{−l−1} μ_i^{−l−1} ρ_l ) / (Δ(ν) Δ(μ)),

and picking the part of total degree −n in each alphabet gives a finite linear
system for the H^d with |ω| = |σ| = n, uniquely solvable when N ≥ n.

Everything here is computed first with ρ_l kept as formal variables
``rho[l]`` (integer arithmetic only) and the weight function is substituted at
the end.  The formal solution is H^d/r_0(−N) written as a polynomial in the
ρ_l, which is also what the recursion identity needs for its
``Term_{ρ_j ≥ l+1}`` filter.

Truncating the l-sum at L = n − 1 is exact for the degree −n part: an entry
with l ≥ n has ν-degree ≤ −n−1, and every other factor of a determinant term
has ν-degree ≤ N − 1, N − 2, …, so the term's total stays below
N(N−1)/2 − n, the only degree that survives division by Δ(ν)Δ(μ).

Two ways of dividing by the Vandermondes are provided and cross-checked:

* ``"bialternant"``: Cauchy–Binet splits the determinant into
  Σ_{l_1>…>l_N} ρ_{l_1}⋯ρ_{l_N} · alt_ν(l) · alt_μ(l); each alternant divided by
  its Vandermonde is the Schur polynomial s_λ(x^{-1}) with λ_a = l_a + a,
  computed here from semistandard tableaux (no division at all);
* ``"literal"``: the degree-graded determinant is expanded and divided by
  Δ(ν) and Δ(μ) with :func:`poly_exact_div`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Optional

from .characters import mn_character, power_sum_eval
from .errors import InconsistentSystem, RepeatedPoint, TruncationError, Underdetermined
from .exact_ring import (
    ONE, RHO, ZERO, BetaSeries, LaurentPoly, VarId, mu, nu,
    poly_det, poly_exact_div, rational_solve, rho_var, series_invert,
)
from .partitions import Partition, as_partition, partitions_of, z_mu
from .weights import WeightFunc, content_product, r0_of, rho


# ---------------------------------------------------------------------------
# contexts and results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MiwaContext:
    """Miwa dimension ``N``, inverse-degree truncation ``n_max`` and optional
    numeric evaluation points for the two alphabets."""

    N: int
    n_max: int
    D: Optional[int] = None
    nu_points: Optional[tuple] = None
    mu_points: Optional[tuple] = None

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("Miwa dimension N must be at least 1")
        for pts in (self.nu_points, self.mu_points):
            if pts is not None:
                if len(pts) != self.N:
                    raise ValueError("need exactly N evaluation points per alphabet")
                _check_points(pts)

    @property
    def nu_vars(self) -> list:
        return [LaurentPoly.var(nu(j)) for j in range(1, self.N + 1)]

    @property
    def mu_vars(self) -> list:
        return [LaurentPoly.var(mu(i)) for i in range(1, self.N + 1)]


def _check_points(points) -> None:
    pts = [Fraction(x) for x in points]
    if len(set(pts)) != len(pts):
        raise RepeatedPoint("Miwa points must be pairwise distinct")
    if any(x == 0 for x in pts):
        raise ValueError("Miwa points must be non-zero")


@dataclass
class TauTruncation:
    """Truncated double power-sum expansion: ``coeffs[(ω, σ)]`` is the β-series
    Σ_d H^d(ω,σ) β^d, with ω paired with the ν-alphabet (t) and σ with μ (s)."""

    n_max: int
    D: int
    coeffs: dict = field(default_factory=dict)

    def series(self, omega, sigma) -> BetaSeries:
        key = (as_partition(omega), as_partition(sigma))
        return self.coeffs.get(key, BetaSeries([], self.D))

    def value(self, omega, sigma, d: int) -> LaurentPoly:
        return self.series(omega, sigma).coeff(d)

    def table(self, d: int) -> dict:
        return {k: s.coeff(d) for k, s in self.coeffs.items()}

    def evaluate(self, nu_points, mu_points) -> BetaSeries:
        """Σ coeff(ω,σ) p_ω(ν^{-1}) p_σ(μ^{-1}) at numeric points."""
        nu_inv = [1 / Fraction(x) for x in nu_points]
        mu_inv = [1 / Fraction(x) for x in mu_points]
        out = BetaSeries([], self.D)
        for (om, sg), s in self.coeffs.items():
            f = power_sum_eval(om, nu_inv) * power_sum_eval(sg, mu_inv)
            if f:
                out = out + s * f
        return out

    def first_difference(self, other: "TauTruncation"):
        """First (ω, σ, d, mine, theirs) where the tables differ, else None."""
        keys = sorted(set(self.coeffs) | set(other.coeffs))
        D = min(self.D, other.D)
        for om, sg in keys:
            for d in range(D + 1):
                a, b = self.value(om, sg, d), other.value(om, sg, d)
                if a != b:
                    return (om, sg, d, a, b)
        return None

    def __eq__(self, other):
        if not isinstance(other, TauTruncation):
            return NotImplemented
        return self.first_difference(other) is None


@dataclass
class VerificationReport:
    identity: str
    params: dict
    passed: bool
    witness: Optional[str] = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {"identity": self.identity, "params": self.params, "pass": self.passed,
               "witness": self.witness}
        if self.details:
            out["details"] = self.details
        return out


# ---------------------------------------------------------------------------
# ρ ladders: formal variables and substitution
# ---------------------------------------------------------------------------

def _rho_entry(l: int, w: Optional[WeightFunc]) -> LaurentPoly:
    if w is None:
        return LaurentPoly.var(rho_var(l))
    return rho(w, l).to_poly()


def rho_substitution(w: WeightFunc, indices) -> dict:
    return {rho_var(l): rho(w, l).to_poly() for l in indices}


def substitute_rho(p: LaurentPoly, w: WeightFunc) -> BetaSeries:
    """Replace every ``rho[l]`` by the β-series ρ_l of ``w``."""
    idx = {v.index for v in p.variables() if v.kind == RHO}
    return BetaSeries.from_poly(p.substitute(rho_substitution(w, idx), beta_cap=w.D), w.D)


def formal_r0(N: int) -> LaurentPoly:
    """r_0(−N) = 1/(ρ_{−1}⋯ρ_{−N}) with formal ρ's."""
    out = ONE
    for a in range(1, N + 1):
        out = out * LaurentPoly.var(rho_var(-a), -1)
    return out


# ---------------------------------------------------------------------------
# the determinant
# ---------------------------------------------------------------------------

def det_matrix(ctx: MiwaContext, w: Optional[WeightFunc] = None, *, P: Optional[int] = None,
               L: Optional[int] = None) -> list:
    """Entries Σ_{l=−P..L} ν_j^{−l−1} μ_i^{−l−1} ρ_l (row i, column j).

    Defaults: P = N, L = n_max − 1.  With ``w=None`` the ρ_l are formal.
    """
    P = ctx.N if P is None else P
    L = ctx.n_max - 1 if L is None else L
    rows = []
    for i in range(1, ctx.N + 1):
        row = []
        for j in range(1, ctx.N + 1):
            e = ZERO
            for l in range(-P, L + 1):
                mono = LaurentPoly.monomial({nu(j): -l - 1, mu(i): -l - 1})
                e = e + mono * _rho_entry(l, w)
            row.append(e)
        rows.append(row)
    return rows


def _vandermonde_poly(kind: int, N: int) -> LaurentPoly:
    xs = [LaurentPoly.var(VarId(kind, i)) for i in range(1, N + 1)]
    out = ONE
    for i, j in combinations(range(N), 2):
        out = out * (xs[j] - xs[i])
    return out


@lru_cache(maxsize=None)
def det_term_formal(N: int, n: int) -> LaurentPoly:
    """Term of ν-degree (and μ-degree) N(N−1)/2 − n of the formal-ρ determinant
    with l ∈ [−N, n−1], expanded by Laplace along rows with memoized
    (columns, degree) minors so only the needed graded pieces are built."""
    P, L = N, n - 1
    target = N * (N - 1) // 2 - n
    memo: dict = {}

    def minor(row: int, cols: tuple, deg: int) -> LaurentPoly:
        rem = N - row
        if rem == 0:
            return ONE if deg == 0 else ZERO
        if deg < rem * (-L - 1) or deg > rem * (P - 1):
            return ZERO
        key = (cols, deg)
        if key in memo:
            return memo[key]
        total = ZERO
        for k, col in enumerate(cols):
            rest = cols[:k] + cols[k + 1:]
            for l in range(-P, L + 1):
                sub = minor(row + 1, rest, deg + l + 1)
                if sub.is_zero():
                    continue
                mono = LaurentPoly.monomial(
                    {nu(col + 1): -l - 1, mu(row + 1): -l - 1, rho_var(l): 1}, -1 if k % 2 else 1)
                total = total + mono * sub
        memo[key] = total
        return total

    return minor(0, tuple(range(N)), target)


@lru_cache(maxsize=None)
def term_ratio_literal(N: int, n: int) -> LaurentPoly:
    """Term_{−n}{det/(Δ(ν)Δ(μ))} with formal ρ, by literal exact division."""
    det = det_term_formal(N, n)
    q = poly_exact_div(det, _vandermonde_poly(NU_KIND, N))
    return poly_exact_div(q, _vandermonde_poly(MU_KIND, N))


NU_KIND = nu(1).kind
MU_KIND = mu(1).kind


@lru_cache(maxsize=None)
def ssyt_monomials(lam: Partition, N: int) -> dict:
    """Schur polynomial s_λ(y_1..y_N) as ``{exponent tuple: Kostka number}``,
    by enumerating semistandard tableaux with entries 1..N."""
    lam = as_partition(lam)
    cells = [(i, j) for i in range(len(lam)) for j in range(lam[i])]
    out: dict = {}
    filling: dict = {}

    def fill(k: int):
        if k == len(cells):
            exps = [0] * N
            for v in filling.values():
                exps[v - 1] += 1
            t = tuple(exps)
            out[t] = out.get(t, 0) + 1
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        for v in range(lo, N + 1):
            filling[(i, j)] = v
            fill(k + 1)
        filling.pop((i, j), None)

    if len(lam) <= N:
        fill(0)
    return out


def _schur_inverse_poly(lam: Partition, kind: int, N: int) -> LaurentPoly:
    terms = {}
    for exps, c in ssyt_monomials(lam, N).items():
        terms[tuple((VarId(kind, j + 1), -e) for j, e in enumerate(exps) if e)] = c
    return LaurentPoly(terms)


def _rho_monomial_of(lam: Partition, N: int) -> LaurentPoly:
    parts = list(lam) + [0] * (N - len(lam))
    out = ONE
    for a in range(1, N + 1):
        out = out * LaurentPoly.var(rho_var(parts[a - 1] - a))
    return out


@lru_cache(maxsize=None)
def term_ratio_bialternant(N: int, n: int) -> LaurentPoly:
    """Term_{−n}{det/(Δ(ν)Δ(μ))} with formal ρ, via the ordered-index (Cauchy–Binet) splitting."""
    out = ZERO
    for lam in partitions_of(n):
        if len(lam) > N:
            continue
        out = out + _rho_monomial_of(lam, N) * _schur_inverse_poly(lam, NU_KIND, N) \
            * _schur_inverse_poly(lam, MU_KIND, N)
    return out


def term_poly(ctx: MiwaContext, w: Optional[WeightFunc], n: int, route: str = "literal") -> LaurentPoly:
    """Term_{−n}{r_0(−N) det/(Δ(ν)Δ(μ))} as a Laurent polynomial.

    With ``w=None`` the ρ's (including those of r_0(−N)) stay formal, so e.g.
    N = 1 gives ρ_{n−1}/ρ_{−1} (νμ)^{−n}; otherwise β appears as a variable.
    """
    ratio = term_ratio_literal(ctx.N, n) if route == "literal" else term_ratio_bialternant(ctx.N, n)
    if w is None:
        return ratio * formal_r0(ctx.N)
    s = substitute_rho(ratio, w) * r0_of(w, -ctx.N)
    return s.to_poly()


# ---------------------------------------------------------------------------
# solving the coefficient system
# ---------------------------------------------------------------------------

def _assignments(parts: tuple, target: tuple) -> int:
    """Number of maps from the parts of ω to bins with the given bin totals."""
    if not parts:
        return 1 if all(t == 0 for t in target) else 0
    first, rest = parts[0], parts[1:]
    total = 0
    for b, t in enumerate(target):
        if t >= first:
            total += _assignments(rest, target[:b] + (t - first,) + target[b + 1:])
    return total


@lru_cache(maxsize=None)
def power_to_monomial_matrix(n: int, N: int) -> tuple:
    """M[a][ω] = coefficient of x^a in p_ω(x_1..x_N), rows a over partitions of
    n with at most N parts (monomial classes), columns ω over partitions of n."""
    rows = [a for a in partitions_of(n) if len(a) <= N]
    cols = partitions_of(n)
    return tuple(rows), tuple(cols), tuple(
        tuple(_assignments(tuple(om), tuple(a) + (0,) * (N - len(a))) for om in cols) for a in rows)


def _class_table(R: LaurentPoly, N: int, n: int) -> dict:
    """Group the terms of R by (ν-class, μ-class) and check that all monomials
    of a class carry the same coefficient (in the remaining variables)."""
    groups: dict = {}
    for mono, c in R.items():
        nu_e = [0] * N
        mu_e = [0] * N
        rest = []
        for v, e in mono:
            if v.kind == NU_KIND:
                nu_e[v.index - 1] = -e
            elif v.kind == MU_KIND:
                mu_e[v.index - 1] = -e
            else:
                rest.append((v, e))
        if min(nu_e) < 0 or min(mu_e) < 0 or sum(nu_e) != n or sum(mu_e) != n:
            raise InconsistentSystem(f"unexpected monomial {mono} in degree −{n} part")
        key = (tuple(nu_e), tuple(mu_e))
        groups.setdefault(key, {})[tuple(rest)] = c
    table: dict = {}
    for (nu_e, mu_e), terms in groups.items():
        a = Partition(sorted((x for x in nu_e if x), reverse=True))
        b = Partition(sorted((x for x in mu_e if x), reverse=True))
        val = LaurentPoly._raw(terms)
        prev = table.setdefault((a, b), val)
        if prev != val:
            raise InconsistentSystem(
                f"monomials of class ({a}, {b}) carry different coefficients: {prev} vs {val}")
    return table


def solve_monomial_system(R: LaurentPoly, N: int, n: int) -> dict:
    """Solve Σ_{ω,σ} H(ω,σ) p_ω(ν^{-1}) p_σ(μ^{-1}) = R for the H's.

    R is homogeneous of degree −n in each alphabet; coefficients of R may
    contain other variables (ρ's, β, G's), which are carried along linearly.
    """
    if N < n:
        raise Underdetermined(f"N={N} < n={n}: the system is underdetermined")
    rows, cols, M = power_to_monomial_matrix(n, N)
    table = _class_table(R, N, n)
    Rm = [[table.get((a, b), ZERO) for b in rows] for a in rows]
    # M H Mᵀ = R  ⇒  X = M⁻¹ R,  H = (M⁻¹ Xᵀ)ᵀ
    X = rational_solve(M, Rm)
    Xt = [list(r) for r in zip(*X)]
    Ht = rational_solve(M, Xt)
    H = [list(r) for r in zip(*Ht)]
    # consistency: the reconstruction must reproduce every class coefficient
    for ai, a in enumerate(rows):
        for bi, b in enumerate(rows):
            acc = ZERO
            for oi in range(len(cols)):
                if M[ai][oi]:
                    for si in range(len(cols)):
                        if M[bi][si] and H[oi][si]:
                            acc = acc + H[oi][si].scale(M[ai][oi] * M[bi][si])
            if acc != Rm[ai][bi]:
                raise InconsistentSystem(f"no exact solution at class ({a}, {b})")
    return {(om, sg): H[oi][si] for oi, om in enumerate(cols) for si, sg in enumerate(cols)}


@lru_cache(maxsize=None)
def formal_rho_table(N: int, n: int, route: str = "literal") -> dict:
    """H^·(ω,σ)/r_0(−N) for |ω| = |σ| = n as polynomials in formal ρ_l.

    For N ≥ n the system is solved directly.  For N < n the system is
    underdetermined, but the N-variable form is still well defined: it is
    obtained from the n-variable solution by keeping the ρ-monomials whose
    sorted subscripts end in −(N+1), −(N+2), …, −n and dropping those
    factors (the monomials that survive sending the extra variables away).
    """
    if n == 0:
        return {(Partition(), Partition()): _rho_monomial_of(Partition(), N)}
    if N >= n:
        R = term_ratio_literal(N, n) if route == "literal" else term_ratio_bialternant(N, n)
        return solve_monomial_system(R, N, n)
    full = formal_rho_table(n, n, route)
    return {k: restrict_rho_poly(v, N, n) for k, v in full.items()}


def restrict_rho_poly(p: LaurentPoly, N: int, N_full: int) -> LaurentPoly:
    out = {}
    for mono, c in p.items():
        idx = sorted((v.index for v, e in mono for _ in range(e)), reverse=True)
        if len(idx) != N_full or any(idx[a - 1] != -a for a in range(N + 1, N_full + 1)):
            continue
        kept = {}
        for l in idx[:N]:
            kept[rho_var(l)] = kept.get(rho_var(l), 0) + 1
        key = tuple(sorted(kept.items()))
        out[key] = out.get(key, 0) + c
    return LaurentPoly(out)


def _weighted_from_formal(table: dict, w: WeightFunc, N: int) -> dict:
    r0 = r0_of(w, -N)
    return {k: substitute_rho(v, w) * r0 for k, v in table.items()}


def solve_tep5_system(ctx: MiwaContext, w: WeightFunc, n: int, d: Optional[int] = None,
                      route: str = "literal") -> dict:
    """H^d(ω,σ) for |ω| = |σ| = n from the degree −n part of the determinant.

    Returns ``{(ω, σ): value}`` at β-degree ``d``, or ``{(ω, σ): BetaSeries}``
    when ``d`` is None.  Raises :class:`Underdetermined` when N < n.
    """
    if ctx.N < n:
        raise Underdetermined(f"N={ctx.N} < n={n}: the system is underdetermined")
    if d is not None and d > w.D:
        raise TruncationError(f"d={d} exceeds the truncation order D={w.D}")
    series = _weighted_from_formal(formal_rho_table(ctx.N, n, route), w, ctx.N)
    if d is None:
        return series
    return {k: s.coeff(d) for k, s in series.items()}


def rhs_tep5(ctx: MiwaContext, w: WeightFunc, cross_check: bool = True) -> TauTruncation:
    """The truncated τ-expansion read off the determinant side, n ≤ n_max.

    Primary route: the bialternant (Schur-product) reorganization; with
    ``cross_check`` the literal-division route must give identical formal
    tables (a failed division raises NotDivisible).
    """
    if ctx.N < ctx.n_max:
        raise Underdetermined(f"N={ctx.N} < n_max={ctx.n_max}: cannot resolve all |ω| ≤ n_max")
    coeffs = {}
    for n in range(ctx.n_max + 1):
        formal = formal_rho_table(ctx.N, n, "bialternant")
        if cross_check and n > 0:
            literal = formal_rho_table(ctx.N, n, "literal")
            for key in formal:
                if formal[key] != literal[key]:
                    raise InconsistentSystem(
                        f"bialternant and literal routes differ at {key}: {formal[key]} vs {literal[key]}")
        for key, s in _weighted_from_formal(formal, w, ctx.N).items():
            if any(s.coeffs):
                coeffs[key] = s
    return TauTruncation(ctx.n_max, w.D, coeffs)


def tau_schur(ctx: Optional[MiwaContext], w: WeightFunc, n_max: Optional[int] = None) -> TauTruncation:
    """Σ_{|λ|≤n_max} r_λ(0) s_λ(t) s_λ(s) in the power-sum basis (character route)."""
    if n_max is None:
        n_max = ctx.n_max
    coeffs = {}
    for n in range(n_max + 1):
        parts = partitions_of(n)
        for om in parts:
            for sg in parts:
                acc = BetaSeries([], w.D)
                for lam in parts:
                    c = mn_character(lam, om) * mn_character(lam, sg)
                    if c:
                        acc = acc + content_product(w, lam, 0) * Fraction(c, z_mu(om) * z_mu(sg))
                if any(acc.coeffs):
                    coeffs[(om, sg)] = acc
    return TauTruncation(n_max, w.D, coeffs)


def monomial_coefficients(tau: TauTruncation, N: int, n: int) -> dict:
    """Coefficient of ν^{−a} μ^{−b} (class representatives a, b) in the degree
    −n part of Σ coeff(ω,σ) p_ω(ν^{-1}) p_σ(μ^{-1}) with N variables each."""
    rows, cols, M = power_to_monomial_matrix(n, N)
    out = {}
    for ai, a in enumerate(rows):
        for bi, b in enumerate(rows):
            acc = BetaSeries([], tau.D)
            for oi, om in enumerate(cols):
                for si, sg in enumerate(cols):
                    f = M[ai][oi] * M[bi][si]
                    if f and (om, sg) in tau.coeffs:
                        acc = acc + tau.coeffs[(om, sg)] * f
            out[(a, b)] = acc
    return out


# ---------------------------------------------------------------------------
# ordered-index expansion of the determinant
# ---------------------------------------------------------------------------

def _sign(perm) -> int:
    s = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def verify_lemma_np(N: int, P: int, w: Optional[WeightFunc] = None, n_max: Optional[int] = None) -> VerificationReport:
    """Both sides of the ordered-index expansion of det(Σ_{l≥−P} …), with the
    l-range truncated to [−P, n_max − 1] on both sides (the identity is exact
    for any finite range)."""
    n_max = N + 1 if n_max is None else n_max
    L = n_max - 1
    ctx = MiwaContext(N, n_max)
    cap = None if w is None else w.D
    lhs = poly_det(det_matrix(ctx, w, P=P, L=L), beta_cap=cap)
    rhs = ZERO
    for ls in combinations(range(L, -P - 1, -1), N):  # l_1 > … > l_N
        rho_prod = ONE
        for l in ls:
            rho_prod = rho_prod.mul(_rho_entry(l, w), cap)
        inner = ZERO
        for sigma in permutations(range(N)):
            m = [[LaurentPoly.monomial({nu(sigma[a] + 1): -ls[a] - 1, mu(i): -ls[a] - 1})
                  for a in range(N)] for i in range(1, N + 1)]
            inner = inner + poly_det(m) * _sign(sigma)
        rhs = rhs + inner.mul(rho_prod, cap)
    passed = lhs == rhs
    witness = None
    if not passed:
        diff = lhs - rhs
        mono, c = next(iter(sorted(diff.items())))
        witness = f"monomial {LaurentPoly._raw({mono: c})} differs"
    return VerificationReport("lemma_np", {"N": N, "P": P, "n_max": n_max,
                                           "weight": "formal-rho" if w is None else repr(w)},
                              passed, witness, {"lhs_terms": len(lhs), "rhs_terms": len(rhs)})


# ---------------------------------------------------------------------------
# recursion identity
# ---------------------------------------------------------------------------

def bar_p(points, m: int, l: int, sigma, k: Optional[int] = None) -> Fraction:
    """p̄_σ(points, m, l) for k+1 = len(points) distinct non-zero points.

    Σ over distinct α_1..α_m of
        Π_{j<m} x_{α_j}^{k+1−j} · x_{α_m}^{−l−1}
        / Π_{j≤m} Π_{i∉{α_1..α_j}} (x_{α_j} − x_i)
        · p_σ(remaining points, in the Miwa sense: at their inverses).
    """
    pts = [Fraction(x) for x in points]
    if len(set(pts)) != len(pts):
        raise RepeatedPoint("points must be pairwise distinct")
    k = len(pts) - 1 if k is None else k
    sigma = as_partition(sigma)
    total = Fraction(0)
    idx = range(len(pts))
    for alpha in permutations(idx, m):
        val = Fraction(1)
        used = set()
        for j, a in enumerate(alpha, 1):
            used.add(a)
            e = k + 1 - j if j < m else -l - 1
            val *= pts[a] ** e
            for i in idx:
                if i not in used:
                    val /= pts[a] - pts[i]
        rest = [1 / pts[i] for i in idx if i not in used]
        if sigma:
            val *= power_sum_eval(sigma, rest) if rest else 0
        total += val
    return total


def _lhs_recursion(k: int, w: WeightFunc, nu_pts, mu_pts) -> BetaSeries:
    table = solve_tep5_system(MiwaContext(k + 1, k + 1), w, k + 1)
    nu_inv = [1 / Fraction(x) for x in nu_pts]
    mu_inv = [1 / Fraction(x) for x in mu_pts]
    out = BetaSeries([], w.D)
    for (om, sg), s in table.items():
        out = out + s * (power_sum_eval(om, nu_inv) * power_sum_eval(sg, mu_inv))
    return out


def _term_rho_at_least(p: LaurentPoly, bound: int) -> LaurentPoly:
    return LaurentPoly._raw({mono: c for mono, c in p.items()
                             if all(v.index >= bound for v, _ in mono if v.kind == RHO)})


def recursion_rhs(k: int, w: WeightFunc, nu_pts, mu_pts) -> BetaSeries:
    """Right side of the recursion identity at numeric points.

    Step m = 1..k+1 peels m points off each alphabet, leaving N = k+1−m:
        Σ_{l=−N}^{k−N} (ρ_l/ρ_{−(N+1)}) Σ_{|ω|=|σ|=k−l−N} p̄_σ(μ,m,l) p̄_ω(ν,m,l)
            · r_0(−N) · Term_{ρ_j ≥ l+1}{H(ω,σ)/r_0(−N)}.
    The m = k+1 step (only l = k survives) is the leading ρ_k/ρ_{−1} term.
    """
    out = BetaSeries([], w.D)
    for m in range(1, k + 2):
        N = k + 1 - m
        r0 = r0_of(w, -N)
        inv = series_invert(rho(w, -(N + 1)))
        for l in range(-N, k - N + 1):
            n_sub = k - l - N
            if N == 0 and n_sub != 0:
                continue
            table = formal_rho_table(N, n_sub) if N > 0 else {(Partition(), Partition()): ONE}
            pref = rho(w, l) * inv
            inner = BetaSeries([], w.D)
            for (om, sg), poly in table.items():
                filtered = _term_rho_at_least(poly, l + 1)
                if filtered.is_zero():
                    continue
                f = bar_p(mu_pts, m, l, sg, k) * bar_p(nu_pts, m, l, om, k)
                if f:
                    inner = inner + substitute_rho(filtered, w) * f
            out = out + pref * r0 * inner
    return out


def verify_recursion(k: int, w: WeightFunc, nu_points, mu_points=None) -> VerificationReport:
    """Evaluate both sides of the recursion identity as exact β-series."""
    if mu_points is None:
        mu_points = nu_points
    for pts in (nu_points, mu_points):
        if len(pts) != k + 1:
            raise ValueError(f"need k+1 = {k + 1} points per alphabet")
        _check_points(pts)
    lhs = _lhs_recursion(k, w, nu_points, mu_points)
    rhs = recursion_rhs(k, w, nu_points, mu_points)
    passed = lhs == rhs
    witness = None
    if not passed:
        for d in range(w.D + 1):
            if lhs.coeff(d) != rhs.coeff(d):
                witness = f"beta^{d}: lhs={lhs.coeff(d)} rhs={rhs.coeff(d)}"
                break
    return VerificationReport("recursion", {"k": k, "D": w.D,
                                            "nu_points": [str(Fraction(x)) for x in nu_points],
                                            "mu_points": [str(Fraction(x)) for x in mu_points]},
                              passed, witness, {"lhs": str(lhs)})

