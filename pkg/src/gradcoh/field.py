"""Exact coefficient fields.

Elements of the rationals are ``Fraction`` instances; elements of F_p are
plain ints in ``range(p)``.  Code that mixes arithmetic and fields calls
``field.reduce`` after ``+ - *`` so both representations stay canonical.
"""
from __future__ import annotations

from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p:
            if not (_is_prime(p) and p < 2**31):
                raise ValueError(f"characteristic must be a prime below 2^31, got {p}")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if not self.p else f"GF({self.p})"

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        p = self.p
        if isinstance(x, str):
            x = Fraction(x)
        if not p:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def reduce(self, a):
        return a % self.p if self.p else a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def to_pair(self, a):
        """Serialize an element as an integer pair (numerator, denominator)."""
        if self.p:
            return (int(a), 1)
        return (a.numerator, a.denominator)

    def format(self, a) -> str:
        if self.p:
            return str(int(a))
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def random(self, rng, height=5):
        """Random element from the integers in [-height, height]."""
        return self(rng.randint(-height, height))


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
