"""Hilbert series, Hilbert function, and the derived (n, d, c) data.

The Hilbert function of S/I is the standard-monomial count of the initial
ideal, obtained here from the Hilbert series numerator of the monomial ideal
(recursive pivot splitting — the counts agree with degree-by-degree
enumeration). The Hilbert polynomial is then fitted from n+2 stabilized values
and verified on two further degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyVarietyError


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return out


def _poly_shift_sub(a: list[int], b: list[int], shift: int) -> list[int]:
    """a − t^shift·b."""
    out = list(a) + [0] * max(0, shift + len(b) - len(a))
    for i, v in enumerate(b):
        out[shift + i] -= v
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize(gens: list[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    out: list[tuple] = []
    for m in gens:
        if not any(all(x <= y for x, y in zip(g, m)) for g in out):
            out.append(m)
    return out


def hilbert_numerator(gens: list[tuple], nvars: int) -> list[int]:
    """Numerator N(t) with HS_{S/(gens)}(t) = N(t)/(1−t)^nvars."""
    gens = _minimalize(list(gens))
    return _numerator(gens, nvars)


def _numerator(gens: list[tuple], nvars: int) -> list[int]:
    if not gens:
        return [1]
    if any(sum(m) == 0 for m in gens):
        return [0]
    if len(gens) == 1:
        return _poly_shift_sub([1], [1], sum(gens[0]))
    # pairwise coprime generators form a monomial complete intersection
    support = [tuple(i for i, e in enumerate(m) if e) for m in gens]
    seen: set[int] = set()
    coprime = True
    for s in support:
        if any(i in seen for i in s):
            coprime = False
            break
        seen.update(s)
    if coprime:
        num = [1]
        for m in gens:
            num = _poly_shift_sub(num, num, sum(m))
        return num
    # pivot on the most shared variable
    counts = [0] * nvars
    for m in gens:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    v = counts.index(max(counts))
    # I + (x_v): drop every generator divisible by x_v, add x_v itself
    plus = [m for m in gens if m[v] == 0]
    plus.append(tuple(1 if i == v else 0 for i in range(nvars)))
    # I : x_v
    colon = _minimalize([tuple(e - 1 if i == v and e else e
                               for i, e in enumerate(m)) for m in gens])
    return _poly_add(_numerator(_minimalize(plus), nvars),
                     [0] + _numerator(colon, nvars))


def hf_from_numerator(num: list[int], nvars: int, upto: int) -> list[int]:
    """Values HF_{S/I}(0..upto) by expanding N(t)/(1−t)^nvars."""
    vals = []
    for t in range(upto + 1):
        total = 0
        for j, nj in enumerate(num):
            if j > t:
                break
            total += nj * binomial(nvars - 1 + t - j, nvars - 1)
        vals.append(total)
    return vals


def _reduce_numerator(num: list[int]) -> tuple[list[int], int]:
    """Cancel (1−t) factors: returns (Q, k) with N = (1−t)^k·Q, Q(1) ≠ 0."""
    q = list(num)
    k = 0
    while len(q) >= 1 and sum(q) == 0 and any(q):
        # synthetic division by (1−t): prefix sums
        out = []
        acc = 0
        for v in q[:-1]:
            acc += v
            out.append(acc)
        q = out if out else [0]
        while len(q) > 1 and q[-1] == 0:
            q.pop()
        k += 1
    return q, k


@dataclass
class HilbertData:
    """Hilbert function values, fitted polynomial, and derived dimensions."""

    hf: dict[int, int]
    hp_coeffs: tuple[Fraction, ...]  # ascending powers of t
    stabilization_degree: int
    n: int       # projective dimension
    degree: int  # leading coefficient × n!

    def hp_value(self, t: int) -> Fraction:
        acc = Fraction(0)
        for i, c in enumerate(self.hp_coeffs):
            acc += c * t ** i
        return acc

    def hf_value(self, t: int) -> int:
        if t in self.hf:
            return self.hf[t]
        if t >= self.stabilization_degree:
            v = self.hp_value(t)
            assert v.denominator == 1
            return int(v)
        raise KeyError(t)


def _lagrange_fit(points: list[tuple[int, int]]) -> tuple[Fraction, ...]:
    """Interpolating polynomial through the points, coefficients ascending."""
    n = len(points) - 1
    coeffs = [Fraction(0)] * (n + 1)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            # multiply basis by (t − xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k] -= c * xj
                nxt[k + 1] += c
            basis = nxt
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def hilbert_data_from_lms(lms: list[tuple], nvars: int) -> HilbertData:
    num = hilbert_numerator(lms, nvars)
    if not any(num):
        raise EmptyVarietyError("unit ideal")
    q, k = _reduce_numerator(num)
    krull = nvars - k
    if krull <= 0:
        raise EmptyVarietyError("ideal defines the empty projective scheme")
    n = krull - 1
    degree = sum(q)
    start = max(len(num) - 1 - n, 0)
    upto = start + n + 4
    values = hf_from_numerator(num, nvars, upto)
    # fit through n+1 points, verify on three more (n+2 used, 2 extra checked)
    pts = [(t, values[t]) for t in range(start, start + n + 1)]
    hp = _lagrange_fit(pts)

    def hp_at(t: int) -> Fraction:
        return sum((c * t ** i for i, c in enumerate(hp)), Fraction(0))

    for t in range(start + n + 1, start + n + 4):
        if hp_at(t) != values[t]:
            raise AssertionError("Hilbert polynomial failed verification")
    lead = hp[-1] if hp else Fraction(0)
    if lead * math.factorial(n) != degree:
        raise AssertionError("degree mismatch between series and polynomial")
    stab = upto
    while stab > 0 and hp_at(stab - 1) == values[stab - 1]:
        stab -= 1
    return HilbertData(hf={t: v for t, v in enumerate(values)},
                       hp_coeffs=hp, stabilization_degree=stab,
                       n=n, degree=degree)
