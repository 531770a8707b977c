"""Hilbert series, Hilbert functions and (quasi-)polynomials, dimension and depth."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import NotZGraded, ZeroModule
from .modules import Presentation, QuotientRing, standard_basis
from .ring import GradingSpec, dadd, dsub


# -- monomial enumeration ------------------------------------------------------

@lru_cache(maxsize=4096)
def monomials_of_degree(grading: GradingSpec, deg):
    """All exponent vectors of multidegree ``deg`` (tuple), in a fixed order."""
    deg = tuple(deg)
    w = grading.weights
    target = grading.weight(deg)
    s = len(w)
    out = []
    if target < 0:
        return ()
    e = [0] * s

    def rec(i, rem):
        if i == s - 1:
            if rem % w[i] == 0:
                e[i] = rem // w[i]
                out.append(tuple(e))
            return
        for a in range(rem // w[i] + 1):
            e[i] = a
            rec(i + 1, rem - a * w[i])
        e[i] = 0

    rec(0, target)
    if grading.rank > 1:
        out = [m for m in out if grading.degree(m) == deg]
    return tuple(out)


_COUNTS = {}


def monomial_count(weights, d: int) -> int:
    """Number of monomials of weighted degree d."""
    if d < 0:
        return 0
    weights = tuple(weights)
    table = _COUNTS.get(weights)
    if table is None or len(table) <= d:
        n = max(d + 1, 64, 2 * len(table) if table else 0)
        c = [0] * n
        c[0] = 1
        for w in weights:
            for k in range(w, n):
                c[k] += c[k - w]
        _COUNTS[weights] = table = c
    return table[d]


# -- Hilbert numerators of monomial ideals -------------------------------------

def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _poly_mul(a, b):
    out = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            d = dadd(d1, d2)
            out[d] = out.get(d, 0) + c1 * c2
    return {d: c for d, c in out.items() if c}


@lru_cache(maxsize=8192)
def _knum(grading, gens):
    """Numerator of the Hilbert series of T/(gens) over prod(1 - t^deg x_i)."""
    zero = grading.zero
    if not gens:
        return ((zero, 1),)
    if any(not any(g) for g in gens):
        return ()
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    pairwise = all(not (supports[i] & supports[j]) for i in range(len(gens)) for j in range(i))
    if pairwise:
        acc = {zero: 1}
        for g in gens:
            acc = _poly_mul(acc, {zero: 1, grading.degree(g): -1})
        return tuple(sorted(acc.items()))
    m = gens[-1]
    rest = gens[:-1]
    quot = _minimalize(tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest))
    left = dict(_knum(grading, _minimalize(rest)))
    right = dict(_knum(grading, quot))
    dm = grading.degree(m)
    for d, c in right.items():
        dd = dadd(d, dm)
        left[dd] = left.get(dd, 0) - c
    return tuple(sorted((d, c) for d, c in left.items() if c))


# -- Hilbert series --------------------------------------------------------------

@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / prod_i (1 - t^deg(x_i)); the numerator is a Laurent polynomial."""

    grading: GradingSpec
    numerator: tuple   # sorted ((multidegree, coefficient), ...)

    @classmethod
    def from_dict(cls, grading, num):
        return cls(grading, tuple(sorted((tuple(d), c) for d, c in num.items() if c)))

    def numerator_dict(self):
        return dict(self.numerator)

    def coarse_numerator(self):
        """Numerator after collapsing degrees with the positivity functional."""
        out = {}
        for d, c in self.numerator:
            w = self.grading.weight(d)
            out[w] = out.get(w, 0) + c
        return {w: c for w, c in out.items() if c}

    def is_zero(self) -> bool:
        return not self.numerator

    def __add__(self, other):
        num = self.numerator_dict()
        for d, c in other.numerator:
            num[d] = num.get(d, 0) + c
        return HilbertSeries.from_dict(self.grading, num)

    def __sub__(self, other):
        num = self.numerator_dict()
        for d, c in other.numerator:
            num[d] = num.get(d, 0) - c
        return HilbertSeries.from_dict(self.grading, num)

    def twist(self, d):
        """Series of M(d)."""
        d = self.grading.as_degree(d)
        return HilbertSeries.from_dict(self.grading, {dsub(a, d): c for a, c in self.numerator})

    def coefficient(self, deg) -> int:
        """dim_k M_deg."""
        g = self.grading
        deg = g.as_degree(deg)
        total = 0
        if g.rank == 1:
            w = g.weights
            for (m,), c in self.numerator:
                total += c * monomial_count(w, deg[0] - m)
        else:
            for m, c in self.numerator:
                total += c * len(monomials_of_degree(g, dsub(deg, m)))
        return total

    def pole_order(self) -> int:
        """Order of the pole at t = 1 of the coarsened series (Krull dimension); -1 if zero."""
        num = self.coarse_numerator()
        if not num:
            return -1
        s = self.grading.nvars
        mult = 0
        while sum(num.values()) == 0:
            num = _divide_one_minus(num, 1)
            mult += 1
        return s - mult

    def laurent_polynomial(self):
        """Coarse series as {degree: dim} when it is a Laurent polynomial, else None."""
        num = self.coarse_numerator()
        for w in self.grading.weights:
            if not num:
                break
            num = _divide_one_minus(num, w)
            if num is None:
                return None
        return num

    def is_laurent_polynomial(self) -> bool:
        return self.laurent_polynomial() is not None


def _divide_one_minus(num, w):
    """num / (1 - t^w) if exact, else None."""
    if not num:
        return {}
    lo, hi = min(num), max(num)
    q = {}
    for d in range(lo, hi + 1):
        v = num.get(d, 0) + q.get(d - w, 0)
        if v:
            q[d] = v
    if any(q.get(d, 0) for d in range(hi - w + 1, hi + 1)):
        return None
    return {d: c for d, c in q.items() if d <= hi - w}


def hilbert_series(M) -> HilbertSeries:
    """Hilbert series of a presentation (over T or A) or of a quotient ring A."""
    if isinstance(M, QuotientRing):
        M = M.as_module()
    if "hs" in M._cache:
        return M._cache["hs"]
    g = M.ring.grading
    num = {}
    lead = M.lead_terms
    for p, a in enumerate(M.target.shifts):
        for d, c in _knum(g, _minimalize(tuple(lead[p]))):
            dd = dadd(d, a)
            num[dd] = num.get(dd, 0) + c
    hs = HilbertSeries.from_dict(g, num)
    M._cache["hs"] = hs
    return hs


def hilbert_function(M, j) -> int:
    return hilbert_series(M).coefficient(j)


def hilbert_function_direct(M, j) -> int:
    """dim M_j by counting standard monomials modulo the relation Groebner basis."""
    if isinstance(M, QuotientRing):
        M = M.as_module()
    return len(standard_basis(M, j))


class QuasiPolynomial:
    """P(j) = polys[j mod period](j); for period 1 an ordinary polynomial."""

    def __init__(self, period, polys):
        self.period = period
        self.polys = polys      # list of coefficient lists (Fractions, low degree first)

    def __call__(self, j: int) -> Fraction:
        coeffs = self.polys[j % self.period]
        v = Fraction(0)
        for c in reversed(coeffs):
            v = v * j + c
        return v

    @property
    def is_polynomial(self) -> bool:
        return all(p == self.polys[0] for p in self.polys)

    def coefficients(self):
        """Coefficients (low degree first) when this is a genuine polynomial."""
        if not self.is_polynomial:
            raise ValueError("Hilbert function is only quasi-polynomial for this grading")
        return list(self.polys[0])

    def __repr__(self):
        if self.is_polynomial:
            return f"HilbertPolynomial({self.polys[0]})"
        return f"QuasiPolynomial(period={self.period})"


def _interpolate(points):
    """Coefficients (low degree first) of the polynomial through (x, y) points."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for k, (xk, _) in enumerate(points):
            if k == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xk * basis[t + 1]
            denom *= (xi - xk)
        for t in range(n):
            coeffs[t] += yi * basis[t] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def hilbert_polynomial(M) -> QuasiPolynomial:
    """The (quasi-)polynomial agreeing with the Hilbert function for j >> 0."""
    hs = hilbert_series(M)
    g = hs.grading
    if g.rank != 1:
        raise NotZGraded("Hilbert polynomials need a Z-grading")
    w = g.weights
    period = 1
    for x in w:
        period = period * x // gcd(period, x)
    num = hs.coarse_numerator()
    if not num:
        return QuasiPolynomial(period, [[Fraction(0)]] * period)
    lo, hi = min(num), max(num)
    j0 = max(lo, hi - sum(w) + 1)
    s = len(w)
    polys = []
    for r in range(period):
        start = j0 + ((r - j0) % period)
        pts = [(start + period * k, Fraction(hs.coefficient(start + period * k))) for k in range(s)]
        polys.append(_interpolate(pts))
    return QuasiPolynomial(period, polys)


# -- dimension and depth -----------------------------------------------------------

def dimension(M) -> int:
    """Krull dimension from the pole order of the Hilbert series (-1 for M = 0)."""
    return hilbert_series(M).pole_order()


def depth_dim(M):
    """(depth, dim, is_cohen_macaulay) of M viewed as a T-module."""
    from .resolution import free_resolution
    if isinstance(M, QuotientRing):
        M = M.as_module()
    MT = M.push_to_T()
    dim = dimension(MT)
    if dim < 0:
        raise ZeroModule("depth of the zero module is undefined")
    pd = free_resolution(MT).projective_dimension
    depth = MT.ring.nvars - pd
    return depth, dim, depth == dim


def is_graded_artinian(A) -> bool:
    """dim A = 0, i.e. the Hilbert series of A is a Laurent polynomial."""
    return hilbert_series(A).is_laurent_polynomial()
