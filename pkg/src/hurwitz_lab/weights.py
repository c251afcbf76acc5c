"""Weight generating functions G(z) and the ladders derived from them.

G(z) = Σ_k G_k z^k with G_0 = 1, given either by parameters
G(z) = Π_k (1 + c_k z) or directly by coefficients (numbers or formal
variables ``G1, G2, ...``).  All ladders are truncated β-series of order D:

* ρ_0 = 1, ρ_j = Π_{k=1..j} G(βk) for j > 0, ρ_{-j} = Π_{k=1..j-1} 1/G(−βk)
  (so ρ_{-1} = 1 and ρ_l / ρ_{l-1} = G(βl) for every l);
* r_0(−n) = 1/(ρ_{-1}⋯ρ_{-n});  r_λ(N) = r_0(N) Π_cells G(β(N + j − i)).

>>> w = WeightFunc.formal(2)
>>> str(g_at(w, 2))
'(1) + (2*G1)*beta^1 + (4*G2)*beta^2'
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

from .errors import InsufficientParameters
from .exact_ring import ONE, BetaSeries, LaurentPoly, as_poly, g_var, series_invert, to_rational
from .partitions import as_partition, contents


def elementary_symmetric(c, k: int):
    """e_k(c_1, …, c_M) (exact)."""
    if k == 0:
        return 1
    total = Fraction(0)
    for idx in combinations(range(len(c)), k):
        p = Fraction(1)
        for i in idx:
            p *= c[i]
        total += p
    return total


class WeightFunc:
    """Weight generating function with truncation order ``D``.

    Construct with :meth:`from_c`, :meth:`from_g`, :meth:`formal`,
    :meth:`exp_truncated` or :meth:`from_spec`.
    """

    def __init__(self, g_coeffs, D: int, c_params=None, label: str = ""):
        gs = [as_poly(g) for g in g_coeffs][: D + 1]
        gs += [LaurentPoly.const(0)] * (D + 1 - len(gs))
        if gs[0] != ONE:
            raise ValueError("G_0 must be 1")
        self.g_coeffs = tuple(gs)
        self.D = D
        self.c_params = None if c_params is None else tuple(Fraction(x) for x in c_params)
        if self.c_params is not None:
            for k in range(D + 1):
                assert self.g_coeffs[k] == elementary_symmetric(self.c_params, k)
        self.label = label
        self._rho: dict = {}

    @classmethod
    def from_c(cls, c, D: int) -> "WeightFunc":
        c = [Fraction(to_rational(x)) for x in c]
        return cls([elementary_symmetric(c, k) for k in range(D + 1)], D, c_params=c,
                   label="c=(" + ",".join(str(x) for x in c) + ")")

    @classmethod
    def from_g(cls, g, D: int) -> "WeightFunc":
        return cls(list(g), D, label="G=(" + ",".join(str(x) for x in g) + ")")

    @classmethod
    def formal(cls, D: int) -> "WeightFunc":
        """G_k kept as formal variables G1..GD."""
        return cls([1] + [LaurentPoly.var(g_var(k)) for k in range(1, D + 1)], D, label="formal")

    @classmethod
    def exp_truncated(cls, D: int) -> "WeightFunc":
        """G_k = 1/k!."""
        return cls([Fraction(1, factorial(k)) for k in range(D + 1)], D, label="exp-truncated")

    @classmethod
    def from_spec(cls, spec: dict, D: int | None = None) -> "WeightFunc":
        """Build from the config form ``{"c": [...]}``, ``{"G": [...]}`` or
        ``{"family": "exp-truncated", "order": D}``.  Entries of a ``G`` list
        are rationals (``"1/2"``) or formal names (``"g3"`` / ``"G3"``)."""
        if "family" in spec:
            if spec["family"] != "exp-truncated":
                raise ValueError(f"unknown weight family {spec['family']!r}")
            order = D if D is not None else spec.get("order")
            if order is None:
                raise ValueError("truncation order D is required")
            return cls.exp_truncated(int(order))
        if D is None:
            raise ValueError("truncation order D is required")
        if "c" in spec:
            return cls.from_c(spec["c"], D)
        if "G" in spec:
            return cls.from_g([parse_g_entry(x) for x in spec["G"]], D)
        raise ValueError("weight spec needs one of 'c', 'G' or 'family'")

    @property
    def is_numeric(self) -> bool:
        return all(g.is_constant() for g in self.g_coeffs)

    def G(self, k: int) -> LaurentPoly:
        if k > self.D:
            raise ValueError(f"G_{k} beyond truncation D={self.D}")
        return self.g_coeffs[k]

    def with_order(self, D: int) -> "WeightFunc":
        if self.c_params is not None:
            return WeightFunc.from_c(self.c_params, D)
        if self.label == "formal":
            return WeightFunc.formal(D)
        if self.label == "exp-truncated":
            return WeightFunc.exp_truncated(D)
        if D > self.D:
            raise ValueError("cannot extend an explicit G-coefficient list")
        return WeightFunc(self.g_coeffs[: D + 1], D, label=self.label)

    def __repr__(self) -> str:
        return f"WeightFunc({self.label or [str(g) for g in self.g_coeffs]}, D={self.D})"


_G_NAME = re.compile(r"^[gG](\d+)$")


def parse_g_entry(x):
    if isinstance(x, (int, Fraction, LaurentPoly)):
        return x
    s = str(x).strip()
    m = _G_NAME.match(s)
    if m:
        return LaurentPoly.var(g_var(int(m.group(1))))
    return to_rational(s)


def g_at(w: WeightFunc, m: int) -> BetaSeries:
    """G(mβ) truncated at β^D."""
    return BetaSeries([w.g_coeffs[k] * (m ** k) for k in range(w.D + 1)], w.D)


def rho(w: WeightFunc, l: int) -> BetaSeries:
    """ρ_l as a β-series (memoized per WeightFunc)."""
    cache = w._rho
    if l in cache:
        return cache[l]
    if l == 0 or l == -1:
        val = BetaSeries.one(w.D)
    elif l > 0:
        val = rho(w, l - 1) * g_at(w, l)
    else:
        # ρ_{l} = ρ_{l+1} / G(β(l+1)) for l ≤ -2
        val = rho(w, l + 1) * series_invert(g_at(w, l + 1))
    cache[l] = val
    return val


def r0_of(w: WeightFunc, N: int) -> BetaSeries:
    """r_0(N): for N ≤ 0 this is 1/(ρ_{-1}⋯ρ_N); for N > 0 it is ρ_0⋯ρ_{N-1}."""
    out = BetaSeries.one(w.D)
    if N <= 0:
        for j in range(1, -N + 1):
            out = out * series_invert(rho(w, -j))
    else:
        for j in range(N):
            out = out * rho(w, j)
    return out


def content_product(w: WeightFunc, lam, N: int = 0) -> BetaSeries:
    """r_λ(N) = r_0(N) · Π_cells G(β(N + j − i))."""
    out = r0_of(w, N)
    for c in contents(as_partition(lam)):
        if N + c:
            out = out * g_at(w, N + c)
    return out


def tuple_weight(w: WeightFunc, colengths) -> Fraction:
    """W_G for a tuple of branch points with the given co-lengths.

    (1/k!) Σ_{σ∈S_k} Σ_{i_1<…<i_k} Π_j c_{i_σ(j)}^{l_j}, i.e. the average over
    injective index assignments.  The empty tuple has weight 1.
    """
    if w.c_params is None:
        raise InsufficientParameters("tuple weights need a c-parameter weight spec")
    c = w.c_params
    k = len(colengths)
    if len(c) < k:
        raise InsufficientParameters(f"{k} branch points need at least {k} parameters, got {len(c)}")
    total = Fraction(0)
    for idx in permutations(range(len(c)), k):
        p = Fraction(1)
        for i, e in zip(idx, colengths):
            p *= c[i] ** e
        total += p
    return total / factorial(k)


def g_lambda(w: WeightFunc, lam) -> LaurentPoly:
    """G_λ = Π_i G_{λ_i}."""
    out = ONE
    for part in as_partition(lam):
        out = out * w.G(part)
    return out


def evaluate_g(value, g_values) -> LaurentPoly:
    """Substitute numbers for the formal variables G1, G2, … in ``value``."""
    mapping = {g_var(k): g_values[k] for k in range(1, len(g_values))}
    return as_poly(value).substitute(mapping)
