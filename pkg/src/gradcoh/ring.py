"""Graded polynomial rings T = k[x_1, ..., x_s] and their elements.

Degrees live in Z^n and are always stored as tuples internally.  A positive
integer functional (``GradingSpec.functional``) collapses them to integer
weights; every ordering and termination argument runs through those weights.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .errors import NonHomogeneousInput, ParseError
from .field import Field, QQ


# -- exponent-vector helpers ------------------------------------------------

def madd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def msub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mdivides(a, b):
    """True iff monomial a divides monomial b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mlcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def dadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def dsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def dneg(a):
    return tuple(-x for x in a)


# -- grading ----------------------------------------------------------------

@dataclass(frozen=True)
class GradingSpec:
    """deg(x_i) in Z^n plus a positivity functional lambda: Z^n -> Z."""

    degrees: tuple
    functional: tuple = None

    def __post_init__(self):
        degs = tuple(tuple(d) if isinstance(d, (tuple, list)) else (int(d),) for d in self.degrees)
        if not degs:
            raise ValueError("at least one variable is required")
        n = len(degs[0])
        if n < 1 or any(len(d) != n for d in degs):
            raise ValueError("all variable degrees must lie in the same Z^n, n >= 1")
        lam = tuple(self.functional) if self.functional is not None else (1,) * n
        if len(lam) != n:
            raise ValueError("functional has the wrong length")
        object.__setattr__(self, "degrees", degs)
        object.__setattr__(self, "functional", lam)
        for i, d in enumerate(degs):
            if self.weight(d) < 1:
                raise ValueError(f"variable {i} has non-positive weight {self.weight(d)}")

    @classmethod
    def from_weights(cls, weights):
        return cls(tuple((int(w),) for w in weights))

    @property
    def rank(self) -> int:
        return len(self.functional)

    @property
    def nvars(self) -> int:
        return len(self.degrees)

    @cached_property
    def weights(self) -> tuple:
        return tuple(self.weight(d) for d in self.degrees)

    @cached_property
    def zero(self) -> tuple:
        return (0,) * self.rank

    def weight(self, deg) -> int:
        return sum(a * b for a, b in zip(self.functional, deg))

    def degree(self, exp) -> tuple:
        out = [0] * self.rank
        for e, d in zip(exp, self.degrees):
            if e:
                for k in range(len(out)):
                    out[k] += e * d[k]
        return tuple(out)

    def as_degree(self, x) -> tuple:
        if isinstance(x, int):
            if self.rank != 1:
                raise ValueError("integer degree given for a multigrading")
            return (x,)
        x = tuple(int(v) for v in x)
        if len(x) != self.rank:
            raise ValueError(f"degree {x} does not lie in Z^{self.rank}")
        return x

    def present(self, deg):
        """Public form of a degree: an int for Z-gradings, a tuple otherwise."""
        return deg[0] if self.rank == 1 else tuple(deg)

    @cached_property
    def total_degree(self) -> tuple:
        """r = sum of the variable degrees (the twist of the canonical module of T)."""
        out = self.zero
        for d in self.degrees:
            out = dadd(out, d)
        return out


# -- monomial orders ---------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex`` (graded by lambda) or ``lex``; ``perm`` lists variables from largest."""

    kind: str = "grevlex"
    perm: tuple = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.perm is not None:
            object.__setattr__(self, "perm", tuple(self.perm))

    def descending_key(self, grading: GradingSpec):
        """Key function on exponents: smaller key = larger monomial."""
        s = grading.nvars
        perm = self.perm if self.perm is not None else tuple(range(s))
        if sorted(perm) != list(range(s)):
            raise ValueError("order permutation does not match the variables")
        w = grading.weights
        if self.kind == "lex":
            def key(e):
                return tuple(-e[i] for i in perm)
        else:
            rev = perm[::-1]

            def key(e):
                return (-sum(a * b for a, b in zip(w, e)),) + tuple(e[i] for i in rev)
        return key


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# -- rings -------------------------------------------------------------------

@dataclass(frozen=True)
class PolyRing:
    field: Field
    names: tuple
    grading: GradingSpec
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != self.grading.nvars:
            raise ValueError("number of names does not match the grading")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def dkey(self):
        return self.order.descending_key(self.grading)

    @cached_property
    def unit_exps(self):
        s = self.nvars
        return tuple(tuple(1 if k == i else 0 for k in range(s)) for i in range(s))

    @cached_property
    def zero_exp(self):
        return (0,) * self.nvars

    def gen(self, i) -> "Polynomial":
        return Polynomial(self, {self.unit_exps[i]: self.field.one})

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {self.zero_exp: self.field(c)})

    def monomial(self, exp, c=1) -> "Polynomial":
        return Polynomial(self, {tuple(exp): self.field(c)})

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                return Polynomial(self, {e: self.field(c) for e, c in x.terms.items()})
            return x
        if isinstance(x, str):
            return parse_polynomial(self, x)
        return self.constant(x)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, self.grading, order)


def polynomial_ring(names="x y z", weights=None, field: Field = QQ, order=GREVLEX,
                    degrees=None, functional=None) -> PolyRing:
    """Convenience constructor: ``polynomial_ring("x y", weights=(1, 2))``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    names = tuple(names)
    if degrees is not None:
        grading = GradingSpec(tuple(degrees), functional)
    else:
        grading = GradingSpec.from_weights(weights if weights is not None else (1,) * len(names))
    return PolyRing(field, names, grading, order)


# -- polynomials -------------------------------------------------------------

class Polynomial:
    """Immutable polynomial: a dict exponent-tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict, clean=True):
        self.ring = ring
        if clean:
            red = ring.field.reduce
            terms = {e: red(c) for e, c in terms.items()}
            terms = {e: c for e, c in terms.items() if c}
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = madd(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                return self == self.ring.constant(other)
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self, order: MonomialOrder = None):
        key = self.ring.dkey if order is None else order.descending_key(self.ring.grading)
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def lead(self, order: MonomialOrder = None):
        """(exponent, coefficient) of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.dkey if order is None else order.descending_key(self.ring.grading)
        e = min(self.terms, key=key)
        return e, self.terms[e]

    def is_homogeneous(self) -> bool:
        degs = {self.ring.grading.degree(e) for e in self.terms}
        return len(degs) <= 1

    def degree(self):
        """Multidegree (tuple) of a nonzero homogeneous polynomial."""
        degs = {self.ring.grading.degree(e) for e in self.terms}
        if len(degs) != 1:
            if not degs:
                raise ValueError("zero polynomial has no degree")
            raise NonHomogeneousInput(str(self))
        return degs.pop()

    def monic(self, order: MonomialOrder = None) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.lead(order)
        inv = self.ring.field.inv(c)
        return Polynomial(self.ring, {e: c2 * inv for e, c2 in self.terms.items()})

    def __repr__(self):
        return str(self)

    def __str__(self):
        return format_polynomial(self.ring, self.terms)


def format_monomial(names, e) -> str:
    parts = []
    for n, a in zip(names, e):
        if a == 1:
            parts.append(n)
        elif a > 1:
            parts.append(f"{n}^{a}")
    return "*".join(parts)


def format_polynomial(ring: PolyRing, terms: dict) -> str:
    if not terms:
        return "0"
    fld = ring.field
    out = []
    for e, c in sorted(terms.items(), key=lambda t: ring.dkey(t[0])):
        neg = False
        if not fld.p and c < 0:
            neg, c = True, -c
        cs = fld.format(c)
        mono = format_monomial(ring.names, e)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-|\(|\)))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            stripped = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[stripped]!r}", col=stripped)
        num, name, op = m.groups()
        start = m.start(1 if num else 2 if name else 3)
        if num:
            out.append(("num", num, start))
        elif name:
            out.append(("name", name, start))
        else:
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse integer/rational coefficients with ``* ^ + -`` and parentheses.

    ParseError.col is the 0-based offset of the offending token in ``text``.
    """
    toks = _tokenize(text)
    idx = {n: i for i, n in enumerate(ring.names)}
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def expr():
        if peek()[1] in ("+", "-") and peek()[0] == "op":
            sign = take()[1]
            acc = term()
            if sign == "-":
                acc = -acc
        else:
            acc = term()
        while peek()[0] == "op" and peek()[1] in ("+", "-"):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = factor()
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            acc = acc * factor()
        return acc

    def factor():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            kind, val, col = take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be a nonnegative integer", col=col)
            base = base ** int(val)
        return base

    def atom():
        kind, val, col = take()
        if kind == "num":
            return ring.constant(Fraction(val))
        if kind == "name":
            if val not in idx:
                raise ParseError(f"unknown variable {val!r}", col=col)
            return ring.gen(idx[val])
        if kind == "op" and val == "(":
            inner = expr()
            k2, v2, c2 = take()
            if v2 != ")":
                raise ParseError("expected ')'", col=c2)
            return inner
        if kind == "op" and val == "-":
            return -factor()
        raise ParseError(f"unexpected {'end of input' if kind == 'end' else repr(val)}", col=col)

    result = expr()
    kind, val, col = peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", col=col)
    return result


def homogeneous_or_raise(polys: Iterable[Polynomial]):
    for f in polys:
        if f.terms and not f.is_homogeneous():
            raise NonHomogeneousInput(str(f))
