"""Exact scalar fields: prime fields F_p and the rationals."""

from __future__ import annotations

import random
from fractions import Fraction

from sympy import isprime

MAX_PRIME = 2**62
DEFAULT_PRIME = 32003


class PrimeField:
    """The prime field F_p with elements stored as ints in [0, p)."""

    is_prime_field = True

    def __init__(self, p: int):
        p = int(p)
        if p < 3 or p >= MAX_PRIME or not isprime(p):
            raise ValueError(f"need an odd prime below 2^62, got {p}")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def size(self) -> int:
        return self.p

    zero = 0
    one = 1

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def reduce(self, x: int) -> int:
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.p)

    def elements(self):
        return range(self.p)

    def to_json(self, a) -> int:
        return int(a)

    def from_json(self, v) -> int:
        return self(v)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class Rationals:
    """The field Q, elements are :class:`fractions.Fraction`."""

    is_prime_field = False
    characteristic = 0
    size = None
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def reduce(self, x):
        return x

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def is_zero(self, a) -> bool:
        return a == 0

    def random(self, rng: random.Random) -> Fraction:
        # small heights keep rational computations cheap
        return Fraction(rng.randint(-9, 9))

    def random_nonzero(self, rng: random.Random) -> Fraction:
        while True:
            x = self.random(rng)
            if x:
                return x

    def to_json(self, a) -> str:
        return str(a)

    def from_json(self, v) -> Fraction:
        return Fraction(v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "Rationals()"


QQ = Rationals()


def field_from_prime(prime: int | None):
    """``None`` or ``0`` selects Q, anything else F_prime."""
    if not prime:
        return QQ
    return PrimeField(prime)
