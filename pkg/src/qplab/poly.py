"""Sparse exact multivariate polynomials.

A Polynomial stores {exponent tuple: nonzero coefficient} plus the ring arity
and field. Values are immutable by convention: no method mutates terms in
place, and callers never share the dict. Text syntax for all file formats:
terms like ``3*x0^2*x4 - x1*x2``, variables ``x0..x{r}``, integer or ``a/b``
coefficients, ``#`` line comments.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction

from .fields import FieldConfig, require_same_field
from .orders import (GREVLEX, MonomialOrder, monomial_div, monomial_divides,
                     monomial_mul)


class RingMismatchError(ValueError):
    """Operands live in rings of different arity."""


class PolyParseError(ValueError):
    pass


class Polynomial:
    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field: FieldConfig, terms: dict | None = None,
                 _clean: bool = False):
        self.nvars = nvars
        self.field = field
        if terms is None:
            terms = {}
        if not _clean:
            zero = field.zero()
            terms = {m: c for m, c in terms.items() if c != zero}
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, field: FieldConfig) -> "Polynomial":
        return cls(nvars, field, {}, _clean=True)

    @classmethod
    def constant(cls, nvars: int, field: FieldConfig, value) -> "Polynomial":
        c = field.convert(value)
        if c == field.zero():
            return cls.zero(nvars, field)
        return cls(nvars, field, {(0,) * nvars: c}, _clean=True)

    @classmethod
    def variable(cls, nvars: int, field: FieldConfig, i: int) -> "Polynomial":
        expo = [0] * nvars
        expo[i] = 1
        return cls(nvars, field, {tuple(expo): field.one()}, _clean=True)

    @classmethod
    def monomial(cls, nvars: int, field: FieldConfig, expo, coeff=1) -> "Polynomial":
        c = field.convert(coeff)
        if c == field.zero():
            return cls.zero(nvars, field)
        return cls(nvars, field, {tuple(expo): c}, _clean=True)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def leading_monomial(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.nvars == other.nvars
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.field, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise RingMismatchError(
                f"ring arity mismatch: {self.nvars} vs {other.nvars}")
        require_same_field(self.field, other.field)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.field.characteristic
        zero = self.field.zero()
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, zero) + c
            if p:
                v %= p
            if v == zero:
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial(self.nvars, self.field, out, _clean=True)

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial(self.nvars, f,
                          {m: f.neg(c) for m, c in self.terms.items()},
                          _clean=True)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        p = self.field.characteristic
        zero = self.field.zero()
        out: dict = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = monomial_mul(m1, m2)
                v = out.get(m, zero) + c1 * c2
                if p:
                    v %= p
                if v == zero:
                    out.pop(m, None)
                else:
                    out[m] = v
        return Polynomial(self.nvars, self.field, out, _clean=True)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f.convert(c)
        if c == f.zero():
            return Polynomial.zero(self.nvars, f)
        return Polynomial(self.nvars, f,
                          {m: f.mul(v, c) for m, v in self.terms.items()},
                          _clean=True)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading_coefficient(order)))

    def mul_term(self, mono, coeff) -> "Polynomial":
        f = self.field
        return Polynomial(self.nvars, f,
                          {monomial_mul(m, mono): f.mul(c, coeff)
                           for m, c in self.terms.items()},
                          _clean=True)

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point):
        """Value at a point (sequence of field elements)."""
        f = self.field
        p = f.characteristic
        total = f.zero()
        for m, c in self.terms.items():
            v = c
            for e, x in zip(m, point):
                if e:
                    v = v * (x ** e if not p else pow(x, e, p))
                    if p:
                        v %= p
            total = total + v
            if p:
                total %= p
        return total

    def substitute_linear(self, matrix) -> "Polynomial":
        """Apply x_i ↦ Σ_j M[i][j]·x_j. Ring automorphism for invertible M."""
        f = self.field
        n = self.nvars
        rows = [Polynomial(n, f,
                           {tuple(1 if j == k else 0 for k in range(n)):
                            f.convert(matrix[i][j])
                            for j in range(n) if f.convert(matrix[i][j]) != f.zero()},
                           _clean=True)
                for i in range(n)]
        power_cache: dict = {}

        def var_power(i: int, e: int) -> Polynomial:
            key = (i, e)
            got = power_cache.get(key)
            if got is None:
                got = rows[i] if e == 1 else var_power(i, e - 1) * rows[i]
                power_cache[key] = got
            return got

        out = Polynomial.zero(n, f)
        for m, c in self.terms.items():
            term = Polynomial.constant(n, f, 1)
            for i, e in enumerate(m):
                if e:
                    term = term * var_power(i, e)
            out = out + term.scale(c)
        return out

    def extend_ring(self, nvars: int, offset: int = 0) -> "Polynomial":
        """Reinterpret in a larger ring, shifting variables by `offset`."""
        if offset + self.nvars > nvars:
            raise RingMismatchError("target ring too small")
        pre, post = (0,) * offset, (0,) * (nvars - offset - self.nvars)
        return Polynomial(nvars, self.field,
                          {pre + m + post: c for m, c in self.terms.items()},
                          _clean=True)

    def restrict_to_back(self, k: int) -> "Polynomial":
        """Drop the first k variables (all exponents there must vanish)."""
        out = {}
        for m, c in self.terms.items():
            if any(m[:k]):
                raise ValueError("polynomial involves a dropped variable")
            out[m[k:]] = c
        return Polynomial(self.nvars - k, self.field, out, _clean=True)

    # -- text ----------------------------------------------------------------

    def to_text(self, var: str = "x") -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=GREVLEX.key, reverse=True):
            c = self.terms[m]
            factors = [f"{var}{i}" + (f"^{e}" if e > 1 else "")
                       for i, e in enumerate(m) if e]
            if not factors:
                body = str(c)
            elif c == self.field.one():
                body = "*".join(factors)
            else:
                body = str(c) + "*" + "*".join(factors)
            parts.append(body)
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self.to_text()})"

    @classmethod
    def parse(cls, text: str, nvars: int, field: FieldConfig,
              var: str = "x") -> "Polynomial":
        return _parse_poly(text, nvars, field, var)


_TOKEN_RE = re.compile(r"\s*([+-]|\d+/\d+|\d+|[A-Za-z]\w*\d*|\^|\*)")


def _parse_poly(text: str, nvars: int, field: FieldConfig, var: str) -> Polynomial:
    text = text.split("#", 1)[0].strip()
    if not text or text == "0":
        return Polynomial.zero(nvars, field)
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PolyParseError(f"bad token at {text[pos:pos+12]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    terms: dict = {}
    i = 0
    n = len(tokens)
    zero = field.zero()
    p = field.characteristic
    while i < n:
        sign = 1
        while i < n and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise PolyParseError("dangling sign")
        coeff = Fraction(sign)
        expo = [0] * nvars
        saw_factor = False
        expect_factor = True
        while i < n:
            tok = tokens[i]
            if tok in "+-":
                break
            if tok == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise PolyParseError(f"missing '*' before {tok!r}")
            if tok[0].isdigit():
                coeff *= Fraction(tok)
            elif tok.startswith(var) and tok[len(var):].isdigit():
                idx = int(tok[len(var):])
                if idx >= nvars:
                    raise PolyParseError(
                        f"variable {tok} out of range for arity {nvars}")
                e = 1
                if i + 2 < n and tokens[i + 1] == "^":
                    e = int(tokens[i + 2])
                    i += 2
                expo[idx] += e
            else:
                raise PolyParseError(f"unexpected token {tok!r}")
            saw_factor = True
            expect_factor = False
            i += 1
        if not saw_factor:
            raise PolyParseError("empty term")
        c = field.convert(coeff)
        if c == zero:
            continue
        key = tuple(expo)
        v = terms.get(key, zero) + c
        if p:
            v %= p
        if v == zero:
            terms.pop(key, None)
        else:
            terms[key] = v
    return Polynomial(nvars, field, terms, _clean=True)


# -- division / normal form --------------------------------------------------

def reduce(f: Polynomial, basis, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Normal form of f modulo a list of nonzero polynomials.

    No term of the result is divisible by any leading monomial of the basis,
    and f − result lies in the ideal the basis generates. Uses a lazy max-heap
    over the working terms; each reduction step cancels the current largest
    reducible term and only introduces strictly smaller ones.
    """
    for g in basis:
        f._check(g)
        if g.is_zero():
            raise ValueError("zero polynomial in reduction basis")
    if f.is_zero() or not basis:
        return f
    field = f.field
    p = field.characteristic
    zero = field.zero()
    key = order.key
    # precompute (lm, inverse lc, tail terms) per basis element
    rules = []
    for g in basis:
        lm = g.leading_monomial(order)
        inv = field.inv(g.terms[lm])
        tail = [(m, c) for m, c in g.terms.items() if m != lm]
        rules.append((lm, inv, tail))
    work = dict(f.terms)
    heap = [(_NegKey(key(m)), m) for m in work]
    heapq.heapify(heap)
    result: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if c is None or c == zero:
            continue
        for lm, inv, tail in rules:
            if monomial_divides(lm, m):
                del work[m]
                shift = monomial_div(m, lm)
                factor = c * inv % p if p else c * inv
                for tm, tc in tail:
                    mm = monomial_mul(tm, shift)
                    v = work.get(mm, zero) - factor * tc
                    if p:
                        v %= p
                    if v == zero:
                        work.pop(mm, None)
                    else:
                        if mm not in work:
                            heapq.heappush(heap, (_NegKey(key(mm)), mm))
                        work[mm] = v
                break
        else:
            result[m] = c
            del work[m]
    return Polynomial(f.nvars, field, result, _clean=True)


class _NegKey:
    """Wraps an order key so heapq's min-heap pops the largest monomial."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k
