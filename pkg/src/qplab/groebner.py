"""Buchberger engine and the ideal-theoretic toolkit.

Determinism contract: the pair queue is ordered by (degree, order key of the
lcm, insertion indices), selection is the normal strategy with Gebauer–Möller
pair elimination, and reduced bases are returned monic and sorted. No random
choices enter this module. An optional weight vector makes graph ideals of
parameterizations weighted-homogeneous so degree-by-degree processing (and
degree truncation) stays meaningful for them.
"""

from __future__ import annotations

import heapq
import threading
from fractions import Fraction

from . import cache as cache_mod
from .errors import DomainError, EmptyVarietyError
from .fields import FieldConfig, require_same_field
from .hilbert import HilbertData, binomial, hilbert_data_from_lms
from .linalg import ExactMatrix, rref_fraction, rref_mod
from .orders import (GREVLEX, Block, MonomialOrder, monomial_div,
                     monomial_divides, monomial_lcm, monomial_mul)
from .poly import Polynomial, reduce


def _wdeg(m: tuple, weights) -> int:
    if weights is None:
        return sum(m)
    return sum(w * e for w, e in zip(weights, m))


def spolynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """S-polynomial of monic f, g."""
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = monomial_lcm(lf, lg)
    one = f.field.one()
    return (f.mul_term(monomial_div(lcm, lf), one)
            - g.mul_term(monomial_div(lcm, lg), one))


def buchberger(gens, order: MonomialOrder = GREVLEX, *, weights=None,
               max_degree: int | None = None) -> list[Polynomial]:
    """Reduced Gröbner basis of the given generators.

    With `max_degree` set (input homogeneous for the active grading), pairs of
    higher degree are discarded; the result generates the ideal correctly in
    all degrees ≤ max_degree.
    """
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    field = basis[0].field
    key = order.key
    G: list[Polynomial] = []
    lms: list[tuple] = []
    pairs: list = []  # heap of (deg, lcm key, i, j, lcm)
    counter = 0

    def update(h: Polynomial):
        # Gebauer–Möller update of the pair set with the new element h
        nonlocal counter
        t = len(G)
        lh = h.leading_monomial(order)
        new = []
        for i in range(t):
            new.append((monomial_lcm(lms[i], lh), i))
        # criterion M: drop (i,h) when another new pair's lcm properly divides
        kept = []
        for lcm_i, i in new:
            drop = False
            for lcm_j, j in new:
                if j == i:
                    continue
                if lcm_j != lcm_i and monomial_divides(lcm_j, lcm_i):
                    drop = True
                    break
            if not drop:
                kept.append((lcm_i, i))
        # criterion F: one pair per lcm value
        by_lcm: dict = {}
        for lcm_i, i in kept:
            by_lcm.setdefault(lcm_i, i)
        # criterion B: coprime leading monomials reduce to zero
        final = [(lcm_i, i) for lcm_i, i in by_lcm.items()
                 if lcm_i != monomial_mul(lms[i], lh)]
        # prune old pairs made redundant by h
        survivors = []
        for entry in pairs:
            _, _, _, i, j, lcm_ij = entry
            if (monomial_divides(lh, lcm_ij)
                    and monomial_lcm(lms[i], lh) != lcm_ij
                    and monomial_lcm(lms[j], lh) != lcm_ij):
                continue
            survivors.append(entry)
        pairs.clear()
        pairs.extend(survivors)
        heapq.heapify(pairs)
        for lcm_i, i in final:
            d = _wdeg(lcm_i, weights)
            if max_degree is not None and d > max_degree:
                continue
            counter += 1
            heapq.heappush(pairs, (d, key(lcm_i), counter, i, t, lcm_i))
        G.append(h)
        lms.append(lh)

    for g in sorted(basis, key=lambda q: key(q.leading_monomial(order))):
        r = reduce(g, G, order) if G else g
        if not r.is_zero():
            update(r.monic(order))

    while pairs:
        _, _, _, i, j, _ = heapq.heappop(pairs)
        s = spolynomial(G[i], G[j], order)
        if s.is_zero():
            continue
        r = reduce(s, G, order)
        if not r.is_zero():
            update(r.monic(order))

    return reduce_basis(G, order)


def reduce_basis(G: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    """Autoreduce: minimal leading monomials, fully reduced tails, monic, sorted."""
    key = order.key
    G = sorted((g for g in G if not g.is_zero()),
               key=lambda g: key(g.leading_monomial(order)))
    minimal = []
    seen_lms: list[tuple] = []
    for g in G:
        lm = g.leading_monomial(order)
        if not any(monomial_divides(m, lm) for m in seen_lms):
            minimal.append(g)
            seen_lms.append(lm)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = reduce(g, others, order)
        if not r.is_zero():
            out.append(r.monic(order))
    return sorted(out, key=lambda g: key(g.leading_monomial(order)))


def is_groebner(G, order: MonomialOrder = GREVLEX) -> bool:
    """Brute-force check: every S-polynomial reduces to zero."""
    G = list(G)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not reduce(spolynomial(G[i], G[j], order), G, order).is_zero():
                return False
    return True


class Ideal:
    """Homogeneous ideal with cached reduced Gröbner bases and Hilbert data.

    Caches are write-once per key under a lock: concurrent readers see either
    absence or a fully constructed value; duplicate computation is resolved
    first-write-wins.
    """

    def __init__(self, nvars: int, field: FieldConfig, gens,
                 check_homogeneous: bool = True):
        self.nvars = nvars
        self.field = field
        clean = []
        for g in gens:
            if g.nvars != nvars:
                raise DomainError("generator in wrong ring")
            require_same_field(g.field, field)
            if g.is_zero():
                continue
            if check_homogeneous and not g.is_homogeneous():
                raise DomainError(f"inhomogeneous generator {g.to_text()}")
            clean.append(g)
        self.gens: tuple = tuple(clean)
        self._gb: dict = {}
        self._gb_trunc: dict = {}
        self._pieces: dict = {}
        self._hilbert: HilbertData | None = None
        self._lock = threading.Lock()

    # -- basics --------------------------------------------------------------

    @property
    def r(self) -> int:
        return self.nvars - 1

    def is_zero(self) -> bool:
        return not self.gens

    def parse_gen(self, text: str) -> Polynomial:
        return Polynomial.parse(text, self.nvars, self.field)

    @classmethod
    def from_texts(cls, nvars: int, field: FieldConfig, texts) -> "Ideal":
        return cls(nvars, field,
                   [Polynomial.parse(t, nvars, field) for t in texts])

    def normalized_gen_texts(self) -> list[str]:
        return sorted(g.monic(GREVLEX).to_text() for g in self.gens)

    def key_digest(self, order: MonomialOrder = GREVLEX) -> str:
        return cache_mod.cache_key(self.nvars, self.field.token(),
                                   self.normalized_gen_texts(), order.token())

    def __repr__(self):
        return f"Ideal(r={self.r}, {len(self.gens)} gens, {self.field.token()})"

    # -- Gröbner bases ---------------------------------------------------------

    def groebner_basis(self, order: MonomialOrder = GREVLEX, *,
                       max_degree: int | None = None) -> list[Polynomial]:
        token = order.token()
        with self._lock:
            if token in self._gb:
                return list(self._gb[token])
            if max_degree is not None and (token, max_degree) in self._gb_trunc:
                return list(self._gb_trunc[(token, max_degree)])
        if not self.gens:
            result: list[Polynomial] = []
        elif max_degree is None:
            disk = cache_mod.active_cache()
            digest = self.key_digest(order)
            lines = disk.get(digest)
            if lines is not None:
                result = [self.parse_gen(t) for t in lines]
            else:
                result = buchberger(list(self.gens), order)
                disk.put(digest, [g.to_text() for g in result])
        else:
            result = buchberger(list(self.gens), order, max_degree=max_degree)
        with self._lock:
            if max_degree is None:
                self._gb.setdefault(token, tuple(result))
                return list(self._gb[token])
            self._gb_trunc.setdefault((token, max_degree), tuple(result))
            return list(self._gb_trunc[(token, max_degree)])

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return reduce(f, self.groebner_basis(), GREVLEX).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        if self.nvars != other.nvars or self.field != other.field:
            return False
        mine = [g.to_text() for g in self.groebner_basis()]
        theirs = [g.to_text() for g in other.groebner_basis()]
        return mine == theirs

    # -- graded pieces -----------------------------------------------------------

    def graded_piece_basis(self, t: int) -> list[Polynomial]:
        """Deterministic (RREF) basis of the degree-t piece."""
        if t < 0:
            raise DomainError("degree must be nonnegative")
        if not self.gens:
            return []
        with self._lock:
            if t in self._pieces:
                return list(self._pieces[t])
        gb = [g for g in self.groebner_basis(GREVLEX, max_degree=t)
              if g.degree() <= t]
        basis = self._row_reduce_multiples(gb, t)
        with self._lock:
            self._pieces.setdefault(t, tuple(basis))
            return list(self._pieces[t])

    def _row_reduce_multiples(self, gb, t: int) -> list[Polynomial]:
        from itertools import combinations_with_replacement
        monos = monomials_of_degree(self.nvars, t)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for g in gb:
            d = g.degree()
            if d > t or d < 0:
                continue
            for extra in combinations_with_replacement(range(self.nvars), t - d):
                shift = [0] * self.nvars
                for i in extra:
                    shift[i] += 1
                shifted = g.mul_term(tuple(shift), self.field.one())
                row = [self.field.zero()] * len(monos)
                for m, c in shifted.terms.items():
                    row[index[m]] = c
                rows.append(row)
        if not rows:
            return []
        mat = ExactMatrix(self.field, rows, len(monos))
        rref, pivots = mat.rref()
        prime = self.field.is_prime_field
        out = []
        for row in rref[:len(pivots)]:
            terms = {monos[i]: (int(v) if prime else v)
                     for i, v in enumerate(row) if v != 0}
            out.append(Polynomial(self.nvars, self.field, terms))
        return out

    def dim_graded_piece(self, t: int) -> int:
        if t < 0:
            raise DomainError("degree must be nonnegative")
        if not self.gens:
            return 0
        if self._hilbert is not None and t in self._hilbert.hf:
            return binomial(self.r + t, t) - self._hilbert.hf[t]
        return len(self.graded_piece_basis(t))

    # -- Hilbert data ------------------------------------------------------------

    def hilbert(self) -> HilbertData:
        with self._lock:
            if self._hilbert is not None:
                return self._hilbert
        gb = self.groebner_basis(GREVLEX)
        if any(g.degree() == 0 for g in gb):
            raise EmptyVarietyError("unit ideal")
        lms = [g.leading_monomial(GREVLEX) for g in gb]
        data = hilbert_data_from_lms(lms, self.nvars)
        with self._lock:
            if self._hilbert is None:
                self._hilbert = data
            return self._hilbert

    def hilbert_function(self, t: int) -> int:
        return self.hilbert().hf_value(t)

    def dim_deg_codim(self) -> tuple[int, int, int]:
        h = self.hilbert()
        return h.n, h.degree, self.r - h.n

    # -- ideal operations -----------------------------------------------------------

    def sum(self, other: "Ideal") -> "Ideal":
        if self.nvars != other.nvars:
            raise DomainError("ring arity mismatch in ideal sum")
        require_same_field(self.field, other.field)
        return Ideal(self.nvars, self.field, self.gens + other.gens)

    def substitute(self, matrix) -> "Ideal":
        return Ideal(self.nvars, self.field,
                     [g.substitute_linear(matrix) for g in self.gens])

    def elimination_ideal(self, k: int) -> "Ideal":
        """I ∩ k[x_k..x_r], as an ideal in a ring of arity nvars − k."""
        if k < 0 or k > self.nvars:
            raise DomainError(f"cannot eliminate {k} of {self.nvars} variables")
        if k == 0:
            return self
        gb = self.groebner_basis(Block(k))
        kept = [g.restrict_to_back(k) for g in gb
                if not any(any(m[:k]) for m in g.terms)]
        return Ideal(self.nvars - k, self.field, kept)

    def quotient(self, f: Polynomial) -> "Ideal":
        """Colon ideal I : (f)."""
        if f.is_zero():
            raise DomainError("quotient by zero")
        if not f.is_homogeneous():
            raise DomainError("quotient by inhomogeneous polynomial")
        if not self.gens:
            return self
        inter = _intersect_with_principal(self, f)
        out = [_exact_divide(g, f) for g in inter]
        return Ideal(self.nvars, self.field, out)

    def saturate(self, f: Polynomial) -> "Ideal":
        """I : f^∞ by iterated quotient until stabilization."""
        current = self
        for _ in range(1000):
            nxt = current.quotient(f)
            if all(current.contains(g) for g in nxt.gens):
                return current
            current = nxt
        raise AssertionError("saturation failed to stabilize")


def monomials_of_degree(nvars: int, t: int) -> list[tuple]:
    """All degree-t monomials, descending grevlex, deterministic."""
    from itertools import combinations_with_replacement
    out = set()
    for combo in combinations_with_replacement(range(nvars), t):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.add(tuple(e))
    return sorted(out, key=GREVLEX.key, reverse=True)


def _intersect_with_principal(I: Ideal, f: Polynomial) -> list[Polynomial]:
    """Generators of I ∩ (f) via a degree-0 tag variable.

    Work in k[u, x..] with u the front block variable: the intersection is the
    u-free part of the ideal (u·g : g ∈ gens) + ((1−u)·f). Grading plays no
    role here; Buchberger needs no homogeneity.
    """
    n = I.nvars
    field = I.field
    big = n + 1
    lifted = []
    u = Polynomial.variable(big, field, 0)
    one = Polynomial.constant(big, field, 1)
    for g in I.gens:
        lifted.append(u * g.extend_ring(big, 1))
    fb = f.extend_ring(big, 1)
    lifted.append((one - u) * fb)
    gb = buchberger(lifted, Block(1))
    return [g.restrict_to_back(1) for g in gb
            if not any(m[0] for m in g.terms)]


def _exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f for g in (f); single-divisor division with zero remainder."""
    field = g.field
    order = GREVLEX
    lf = f.leading_monomial(order)
    lcf = f.terms[lf]
    quotient = Polynomial.zero(g.nvars, field)
    rem = g
    while not rem.is_zero():
        lm = rem.leading_monomial(order)
        if not monomial_divides(lf, lm):
            raise AssertionError("intersection member not divisible")
        c = field.div(rem.terms[lm], lcf)
        term = Polynomial.monomial(g.nvars, field, monomial_div(lm, lf), c)
        quotient = quotient + term
        rem = rem - term * f
    return quotient
