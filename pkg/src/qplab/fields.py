"""Coefficient fields: the rationals and prime fields.

Every polynomial in one computation carries the same FieldConfig. Rational
coefficients are `fractions.Fraction`; prime-field coefficients are plain ints
in [0, p). The default prime 32003 is the fast mode; 30011 is the cross-check
prime used to guard against unlucky primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32003
CHECK_PRIME = 30011


class FieldMismatchError(ValueError):
    """Operands constructed over different coefficient fields."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond any characteristic we use
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldConfig:
    """Base field of a computation: ℚ (characteristic 0) or GF(p)."""

    characteristic: int = DEFAULT_PRIME

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p == 2 or not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or an odd prime, got {p}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def token(self) -> str:
        return "Q" if self.characteristic == 0 else f"p{self.characteristic}"

    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def convert(self, value):
        """Map an int, Fraction, or a/b string into this field."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return value.numerator * pow(den, p - 2, p) % p
        return value % p

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return a * b % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return -a % p if p else -a

    def inv(self, a):
        p = self.characteristic
        if p:
            if a % p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, p - 2, p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))


QQ = FieldConfig(0)
GF32003 = FieldConfig(DEFAULT_PRIME)
GF30011 = FieldConfig(CHECK_PRIME)


def field_from_token(token: str) -> FieldConfig:
    """Parse "Q" or "p<prime>" (also accepts a bare characteristic)."""
    t = token.strip()
    if t in ("Q", "QQ", "0", "rationals"):
        return QQ
    if t.startswith("p"):
        t = t[1:]
    return FieldConfig(int(t))


def require_same_field(f1: FieldConfig, f2: FieldConfig) -> None:
    if f1 != f2:
        raise FieldMismatchError(f"field mismatch: {f1.token()} vs {f2.token()}")
