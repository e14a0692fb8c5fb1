"""Monomial orders: grevlex, lex, and block elimination orders.

Monomials are exponent tuples. Each order exposes a sort key; larger key means
larger monomial, so `max(terms, key=order.key)` finds the leading monomial.
Block(k) puts the first k variables in a front block compared grevlex-first,
so any monomial containing a front variable exceeds every monomial in the back
variables alone — the property that makes block orders compute elimination
ideals.
"""

from __future__ import annotations

Monomial = tuple  # exponent vector, one entry per variable


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when a | b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def monomial_div(b: Monomial, a: Monomial) -> Monomial:
    """b / a, assuming divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomial_deg(a: Monomial) -> int:
    return sum(a)


def _grevlex_key(m: Monomial):
    # higher total degree wins; ties broken by the smaller exponent on the
    # latest variable where they differ
    return (sum(m),) + tuple(-e for e in reversed(m))


class MonomialOrder:
    """Base class; subclasses define key() and a stable token for caching."""

    def key(self, m: Monomial):
        raise NotImplementedError

    def token(self) -> str:
        raise NotImplementedError

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.token() == other.token()

    def __hash__(self):
        return hash(self.token())

    def __repr__(self):
        return f"MonomialOrder({self.token()})"


class Grevlex(MonomialOrder):
    def key(self, m: Monomial):
        return _grevlex_key(m)

    def token(self) -> str:
        return "grevlex"


class Lex(MonomialOrder):
    def key(self, m: Monomial):
        return m

    def token(self) -> str:
        return "lex"


class Block(MonomialOrder):
    """Eliminates the first k variables; grevlex within each block."""

    def __init__(self, k: int):
        if k < 0:
            raise ValueError("front block size must be nonnegative")
        self.k = k

    def key(self, m: Monomial):
        k = self.k
        return _grevlex_key(m[:k]) + _grevlex_key(m[k:])

    def token(self) -> str:
        return f"block{self.k}"


GREVLEX = Grevlex()
LEX = Lex()


def order_from_token(token: str) -> MonomialOrder:
    t = token.strip()
    if t == "grevlex":
        return GREVLEX
    if t == "lex":
        return LEX
    if t.startswith("block"):
        return Block(int(t[5:]))
    raise ValueError(f"unknown monomial order {token!r}")
