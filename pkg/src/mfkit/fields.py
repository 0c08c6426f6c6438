"""Exact coefficient fields: the rationals and prime fields.

Rational coefficients are `fractions.Fraction` values (always stored in
lowest terms with positive denominator). Prime field coefficients are
plain ints in the range [0, p). All arithmetic goes through the field
object so that polynomial code never hardcodes a coefficient type.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZeroInCoefficient


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The field of rational numbers."""

    name = "qq"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def ratio(self, num: int, den: int) -> Fraction:
        if den == 0:
            raise DivisionByZeroInCoefficient("zero denominator in coefficient")
        return Fraction(num, den)

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
            raise DivisionByZeroInCoefficient("division by zero coefficient")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, a) -> str:
        return str(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("qq")

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    """The field with p elements, p prime, 2 <= p < 2**31."""

    def __init__(self, p: int):
        if not (2 <= p < 2**31) or not _is_prime(p):
            raise ValueError(f"modulus must be a prime in [2, 2^31): {p}")
        self.p = p
        self.name = f"fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n: int) -> int:
        return n % self.p

    def ratio(self, num: int, den: int) -> int:
        d = den % self.p
        if d == 0:
            raise DivisionByZeroInCoefficient(
                f"denominator is zero modulo {self.p}"
            )
        return num % self.p * pow(d, self.p - 2, self.p) % self.p

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
            raise DivisionByZeroInCoefficient("division by zero coefficient")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("fp", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


QQ = Rationals()


def field_from_name(name: str):
    """Parse a field spec: "qq" or "fp:<prime>"."""
    if name == "qq":
        return QQ
    if name.startswith("fp:"):
        try:
            p = int(name[3:])
        except ValueError:
            raise ValueError(f"bad prime field spec: {name!r}") from None
        return PrimeField(p)
    raise ValueError(f"unknown field: {name!r} (expected 'qq' or 'fp:<p>')")
