"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction` (coefficients with denominator 1 are
kept as plain ``int`` internally, which keeps integer-heavy determinant work
fast).  :class:`LaurentPoly` is a sparse multivariate Laurent polynomial whose
monomials are canonical sorted tuples of ``(VarId, exponent)`` pairs;
:class:`BetaSeries` is a power series in β truncated at a fixed order ``D``.

>>> x, y = LaurentPoly.var(mu(1)), LaurentPoly.var(mu(2))
>>> (x + y) * (x - y) == x**2 - y**2
True
>>> poly_exact_div(x**2 - y**2, x - y) == x + y
True
"""
from __future__ import annotations

import heapq
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import NonUnitConstantTerm, NotDivisible, TooLarge, TruncationError

Rational = Fraction

# Variable kinds, in canonical order.  RHO (formal ρ_l, signed index) is an
# addition used by the formal-ρ mode of the determinant pipeline.
MU, NU, BETA, C, G, RHO = range(6)
_KIND_NAMES = {MU: "mu", NU: "nu", BETA: "beta", C: "c", G: "G", RHO: "rho"}


class VarId(NamedTuple):
    kind: int
    index: int

    def __str__(self) -> str:
        if self.kind == BETA:
            return "beta"
        if self.kind == RHO:
            return f"rho[{self.index}]"
        return f"{_KIND_NAMES[self.kind]}{self.index}"


def mu(i: int) -> VarId:
    return VarId(MU, i)


def nu(j: int) -> VarId:
    return VarId(NU, j)


BETA_VAR = VarId(BETA, 0)


def c_var(k: int) -> VarId:
    return VarId(C, k)


def g_var(k: int) -> VarId:
    return VarId(G, k)


def rho_var(l: int) -> VarId:
    return VarId(RHO, l)


Number = Union[int, Fraction]

_limits = {"max_terms": 2_000_000}


def set_max_terms(n: int) -> None:
    """Set the global term-count ceiling guarding against blow-up."""
    _limits["max_terms"] = int(n)


def get_max_terms() -> int:
    return _limits["max_terms"]


@contextmanager
def max_terms(n: int):
    """Temporarily change the term-count ceiling."""
    old = _limits["max_terms"]
    _limits["max_terms"] = int(n)
    try:
        yield
    finally:
        _limits["max_terms"] = old


def to_rational(x) -> Number:
    """Convert ``int``/``Fraction``/``"p/q"`` string to an exact number."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return _norm(x)
    if isinstance(x, str):
        return _norm(Fraction(x.strip()))
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _mono_div(a: tuple, b: tuple) -> tuple:
    return _mono_mul(a, tuple((v, -e) for v, e in b))


def _beta_deg(mono: tuple) -> int:
    for v, e in mono:
        if v[0] == BETA:
            return e
    return 0


def _check_size(d: dict) -> None:
    if len(d) > _limits["max_terms"]:
        raise TooLarge(
            f"polynomial exceeded {_limits['max_terms']} terms; "
            "lower n/D/N or raise the ceiling (--max-terms)"
        )


class LaurentPoly:
    """Immutable sparse Laurent polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for mono, coef in terms.items():
                mono = tuple(sorted((VarId(*v), int(e)) for v, e in dict(mono).items() if e))
                coef = to_rational(coef)
                if coef:
                    clean[mono] = _norm(clean.get(mono, 0) + coef)
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = to_rational(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, v: VarId, exp: int = 1) -> "LaurentPoly":
        return cls._raw({((VarId(*v), exp),): 1} if exp else {(): 1})

    @classmethod
    def monomial(cls, exps: Mapping[VarId, int], coef=1) -> "LaurentPoly":
        return cls({tuple(exps.items()): coef})

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict:
        """Copy of the term map ``{monomial: coefficient}``."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Number:
        """Value of a constant polynomial (ValueError otherwise)."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), 0)

    def variables(self) -> set:
        return {v for mono in self._terms for v, _ in mono}

    # -- arithmetic -----------------------------------------------------
    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.const(x)

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.const(other)
            except TypeError:
                return NotImplemented
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        res = dict(big)
        for m, c in small.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = _norm(s)
            else:
                del res[m]
        _check_size(res)
        return LaurentPoly._raw(res)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentPoly":
        c = to_rational(c)
        if not c:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({m: _norm(v * c) for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return self.mul(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            if other.is_constant():
                other = other.constant_value()
            else:
                return poly_exact_div(self, other)
        other = to_rational(other)
        return self.scale(Fraction(1) / other)

    def mul(self, other: "LaurentPoly", beta_cap: int | None = None) -> "LaurentPoly":
        """Product; if ``beta_cap`` is given, drop terms with β-degree > beta_cap."""
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        res: dict = {}
        if beta_cap is None:
            blist = list(b.items())
            for ma, ca in a.items():
                for mb, cb in blist:
                    m = _mono_mul(ma, mb)
                    s = res.get(m, 0) + ca * cb
                    if s:
                        res[m] = s
                    else:
                        del res[m]
                _check_size(res)
        else:
            blist = [(m, c, _beta_deg(m)) for m, c in b.items()]
            for ma, ca in a.items():
                da = _beta_deg(ma)
                if da > beta_cap:
                    continue
                for mb, cb, db in blist:
                    if da + db > beta_cap:
                        continue
                    m = _mono_mul(ma, mb)
                    s = res.get(m, 0) + ca * cb
                    if s:
                        res[m] = s
                    else:
                        del res[m]
                _check_size(res)
        return LaurentPoly._raw({m: _norm(c) for m, c in res.items()})

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self._terms) != 1:
                raise NotDivisible("only monomials can be raised to negative powers")
            (mono, c), = self._terms.items()
            return LaurentPoly._raw({tuple((v, x * e) for v, x in mono): _norm(Fraction(c) ** e)})
        result = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def truncate_beta(self, cap: int) -> "LaurentPoly":
        return LaurentPoly._raw({m: c for m, c in self._terms.items() if _beta_deg(m) <= cap})

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        try:
            other = LaurentPoly.const(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- substitution ---------------------------------------------------
    def substitute(self, mapping: Mapping, beta_cap: int | None = None) -> "LaurentPoly":
        """Ring homomorphism replacing variables by polynomials or numbers.

        Variables absent from ``mapping`` are kept.  Negative exponents require
        the image to be a monomial (or a non-zero number).
        """
        images = {VarId(*v): LaurentPoly._coerce(p) for v, p in mapping.items()}
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = images[v].mul(images[v] ** (e - 1), beta_cap) if e > 1 else (
                    images[v] if e == 1 else _inverse_power(images[v], -e))
            return powers[key]

        out = LaurentPoly._raw({})
        for mono, coef in self._terms.items():
            kept = []
            term = LaurentPoly.const(coef)
            for v, e in mono:
                if v in images:
                    term = term.mul(power(v, e), beta_cap)
                else:
                    kept.append((v, e))
            if kept:
                term = term.mul(LaurentPoly._raw({tuple(kept): 1}), beta_cap)
            out = out + term
        return out

    def evaluate(self, mapping: Mapping) -> Number:
        """Evaluate at numbers for every variable; result must be a number."""
        return self.substitute(mapping).constant_value()

    # -- printing -------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms):
            c = self._terms[mono]
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            factors = []
            for v, e in mono:
                factors.append(str(v) if e == 1 else f"{v}^{e}")
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = f"{a}*" + "*".join(factors)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def _inverse_power(p: LaurentPoly, e: int) -> LaurentPoly:
    if p.is_constant():
        return LaurentPoly.const(Fraction(1) / Fraction(p.constant_value()) ** e)
    return (p ** -1) ** e


def as_poly(x) -> LaurentPoly:
    """Coerce a number or polynomial to :class:`LaurentPoly`."""
    return LaurentPoly._coerce(x)


ZERO = LaurentPoly.const(0)
ONE = LaurentPoly.const(1)


def poly_add(a, b) -> LaurentPoly:
    return as_poly(a) + as_poly(b)


def poly_mul(a, b) -> LaurentPoly:
    return as_poly(a) * as_poly(b)


def poly_neg(a) -> LaurentPoly:
    return -as_poly(a)


# ---------------------------------------------------------------------------
# exact division
# ---------------------------------------------------------------------------

def poly_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * b == a`` or raise :class:`NotDivisible`.

    Leading-term division under the lexicographic order on dense exponent
    vectors.  In the Laurent ring every monomial is a unit, so the only way to
    fail is a leading term whose quotient leaves the box of exponents any exact
    quotient must live in (per variable: ``min_a - min_b .. max_a - max_b``).
    """
    a, b = as_poly(a), as_poly(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return ZERO
    if len(b) == 1:
        return a * b ** -1
    variables = sorted(a.variables() | b.variables())
    pos = {v: i for i, v in enumerate(variables)}
    nv = len(variables)

    def dense(mono):
        vec = [0] * nv
        for v, e in mono:
            vec[pos[v]] = e
        return tuple(vec)

    def sparse(vec):
        return tuple((variables[i], e) for i, e in enumerate(vec) if e)

    A = {dense(m): c for m, c in a.items()}
    B = [(dense(m), c) for m, c in b.items()]
    lead_b, lead_c = max(B)
    lo = [min(v[i] for v in A) - min(v[i] for v, _ in B) for i in range(nv)]
    hi = [max(v[i] for v in A) - max(v[i] for v, _ in B) for i in range(nv)]

    rem = dict(A)
    heap = [tuple(-x for x in v) for v in rem]
    heapq.heapify(heap)
    quotient = {}
    while rem:
        key = heapq.heappop(heap)
        lt = tuple(-x for x in key)
        c = rem.get(lt)
        if c is None:
            continue
        qv = tuple(x - y for x, y in zip(lt, lead_b))
        if any(q < l or q > h for q, l, h in zip(qv, lo, hi)):
            raise NotDivisible("non-zero remainder in exact division")
        if isinstance(c, int) and isinstance(lead_c, int) and c % lead_c == 0:
            qc = c // lead_c
        else:
            qc = _norm(Fraction(c) / lead_c)
        quotient[qv] = qc
        for bv, bc in B:
            m = tuple(x + y for x, y in zip(qv, bv))
            s = rem.get(m, 0) - qc * bc
            if s:
                if m not in rem:
                    heapq.heappush(heap, tuple(-x for x in m))
                rem[m] = _norm(s)
            else:
                rem.pop(m, None)
        _check_size(rem)
    return LaurentPoly._raw({sparse(v): c for v, c in quotient.items()})


# ---------------------------------------------------------------------------
# coefficient extraction
# ---------------------------------------------------------------------------

def coeff_extract(p: LaurentPoly, *, total: int | None = None, beta: int | None = None,
                  monomial: Mapping[VarId, int] | None = None) -> LaurentPoly:
    """Select part of ``p``.

    * ``total=n``: terms of total MU-degree ``-n`` and total NU-degree ``-n``
      (the Term_{-n} selector); all variables retained.
    * ``beta=d``: coefficient of β^d (β removed, other variables retained).
    * ``monomial={var: exp}``: coefficient of the given monomial, where every
      variable of a kind mentioned in ``monomial`` must match exactly (absent
      means exponent 0); those variables are removed.
    """
    out = {}
    kinds = {VarId(*v).kind for v in monomial} if monomial else set()
    target = {VarId(*v): e for v, e in monomial.items() if e} if monomial else {}
    for mono, c in p.items():
        if total is not None:
            dm = sum(e for v, e in mono if v.kind == MU)
            dn = sum(e for v, e in mono if v.kind == NU)
            if dm != -total or dn != -total:
                continue
        if beta is not None:
            if _beta_deg(mono) != beta:
                continue
            mono = tuple((v, e) for v, e in mono if v.kind != BETA)
        if monomial is not None:
            sel = {v: e for v, e in mono if v.kind in kinds}
            if sel != target:
                continue
            mono = tuple((v, e) for v, e in mono if v.kind not in kinds)
        out[mono] = _norm(out.get(mono, 0) + c)
    return LaurentPoly._raw({m: c for m, c in out.items() if c})


def kind_degree(mono: tuple, kind: int) -> int:
    return sum(e for v, e in mono if v.kind == kind)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def poly_det(m: Sequence[Sequence], beta_cap: int | None = None) -> LaurentPoly:
    """Exact determinant by Laplace expansion along rows with memoized minors.

    >>> a, b, c, d = (LaurentPoly.var(c_var(i)) for i in range(1, 5))
    >>> poly_det([[a, b], [c, d]]) == a * d - b * c
    True
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return ONE
    entries = [[as_poly(x) for x in row] for row in m]
    memo: dict = {}

    def minor(row: int, cols: tuple) -> LaurentPoly:
        # determinant of rows row..n-1 restricted to columns ``cols``
        if row == n:
            return ONE
        key = cols
        if key in memo:
            return memo[key]
        total = ZERO
        for k, col in enumerate(cols):
            e = entries[row][col]
            if e.is_zero():
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1:])
            if sub.is_zero():
                continue
            term = e.mul(sub, beta_cap)
            total = total - term if k % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def rational_det(m: Sequence[Sequence]) -> Number:
    """Determinant of a matrix of exact numbers by Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            return 0
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        inv = 1 / a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] * inv
            if f:
                for k in range(i, n):
                    a[r][k] -= f * a[i][k]
    return _norm(det)


def rational_solve(m: Sequence[Sequence], rhs: Sequence[Sequence]) -> list:
    """Solve ``m X = rhs`` over the rationals (``m`` square and invertible).

    ``rhs`` columns may hold :class:`LaurentPoly` entries; only rational
    arithmetic is applied to them.
    """
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    b = [[as_poly(x) for x in row] for row in rhs]
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[i], a[piv] = a[piv], a[i]
        b[i], b[piv] = b[piv], b[i]
        inv = 1 / a[i][i]
        a[i] = [x * inv for x in a[i]]
        b[i] = [x.scale(inv) for x in b[i]]
        for r in range(n):
            if r != i and a[r][i] != 0:
                f = a[r][i]
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
                b[r] = [x - y.scale(f) for x, y in zip(b[r], b[i])]
    return b


# ---------------------------------------------------------------------------
# truncated β-series
# ---------------------------------------------------------------------------

class BetaSeries:
    """Power series Σ_{d≤D} a_d β^d with :class:`LaurentPoly` coefficients."""

    __slots__ = ("coeffs", "D")

    def __init__(self, coeffs: Iterable, D: int):
        cs = [as_poly(c) for c in coeffs][: D + 1]
        cs += [ZERO] * (D + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.D = D

    @classmethod
    def one(cls, D: int) -> "BetaSeries":
        return cls([ONE], D)

    @classmethod
    def from_poly(cls, p: LaurentPoly, D: int) -> "BetaSeries":
        buckets = [dict() for _ in range(D + 1)]
        for mono, c in as_poly(p).items():
            d = _beta_deg(mono)
            if d < 0:
                raise ValueError("negative β power in a series")
            if d <= D:
                rest = tuple((v, e) for v, e in mono if v.kind != BETA)
                buckets[d][rest] = c
        return cls([LaurentPoly._raw(b) for b in buckets], D)

    def to_poly(self) -> LaurentPoly:
        out = ZERO
        for d, c in enumerate(self.coeffs):
            if d == 0:
                out = out + c
            elif c:
                out = out + c.mul(LaurentPoly.var(BETA_VAR, d))
        return out

    def coeff(self, d: int) -> LaurentPoly:
        if d < 0:
            return ZERO
        if d > self.D:
            raise TruncationError(f"β-degree {d} exceeds truncation order D={self.D}")
        return self.coeffs[d]

    def _coerce(self, other) -> "BetaSeries":
        if isinstance(other, BetaSeries):
            if other.D != self.D:
                D = min(self.D, other.D)
                return BetaSeries(other.coeffs, D)
            return other
        return BetaSeries([as_poly(other)], self.D)

    def __add__(self, other):
        o = self._coerce(other)
        D = min(self.D, o.D)
        return BetaSeries([a + b for a, b in zip(self.coeffs[: D + 1], o.coeffs)], D)

    __radd__ = __add__

    def __neg__(self):
        return BetaSeries([-a for a in self.coeffs], self.D)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BetaSeries):
            p = as_poly(other)
            return BetaSeries([a * p for a in self.coeffs], self.D)
        D = min(self.D, other.D)
        out = [ZERO] * (D + 1)
        for i in range(D + 1):
            ai = self.coeffs[i]
            if not ai:
                continue
            for j in range(D + 1 - i):
                bj = other.coeffs[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return BetaSeries(out, D)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return series_invert(self) ** (-e)
        out = BetaSeries.one(self.D)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, BetaSeries):
            return self * series_invert(other)
        return self * (Fraction(1) / Fraction(to_rational(other)))

    def invert(self) -> "BetaSeries":
        return series_invert(self)

    def map(self, f) -> "BetaSeries":
        return BetaSeries([f(c) for c in self.coeffs], self.D)

    def __eq__(self, other):
        if isinstance(other, BetaSeries):
            return self.D == other.D and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.D, self.coeffs))

    def __str__(self):
        parts = []
        for d, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c})" if d == 0 else f"({c})*beta^{d}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"BetaSeries({str(self)!r}, D={self.D})"


def series_invert(a: BetaSeries) -> BetaSeries:
    """Inverse of a truncated series with constant term exactly 1.

    >>> s = BetaSeries([1, LaurentPoly.var(c_var(1))], 2)
    >>> str(series_invert(s))
    '(1) + (-c1)*beta^1 + (c1^2)*beta^2'
    """
    if a.coeffs[0] != ONE:
        raise NonUnitConstantTerm(f"constant term {a.coeffs[0]} is not 1")
    b = [ONE]
    for m in range(1, a.D + 1):
        acc = ZERO
        for j in range(1, m + 1):
            if a.coeffs[j]:
                acc = acc + a.coeffs[j] * b[m - j]
        b.append(-acc)
    return BetaSeries(b, a.D)
