"""Koszul strand linear algebra: the quadratic strand β_{p,1}, the second
strand b2 and the Green–Lazarsfeld index, regularity via generic initial
ideals, and extraction of a minimal-degree variety from a top strand class.

Indexing: b1[p] = β_{p,1} (kernel of the Koszul differential on wedges
tensored with the quadrics, valid for nondegenerate varieties). b2[i] is
indexed on the ideal side, so b2[0] counts the cubic minimal generators;
wedge bases are sorted subsets in colexicographic order, differential signs
by position parity, so every matrix is reproducible bit for bit.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (DomainError, ExtractionError, GenericityError,
                     InputContractError, NondegeneracyError)
from .fields import FieldConfig
from .groebner import Ideal, monomials_of_degree
from .linalg import (kernel_fraction, kernel_mod, rref_fraction, rref_mod)
from .orders import GREVLEX, monomial_divides
from .poly import Polynomial, reduce
from .varieties import Variety, _random_field_element

INF = math.inf


def _wedge_basis(nvars: int, k: int) -> list[tuple]:
    if k < 0:
        return []
    return sorted(combinations(range(nvars), k),
                  key=lambda s: tuple(reversed(s)))


def _piece_matrix(ideal: Ideal, t: int):
    """(monomial list, RREF rows, pivot columns) of the degree-t piece."""
    basis = ideal.graded_piece_basis(t)
    monos = monomials_of_degree(ideal.nvars, t)
    index = {m: i for i, m in enumerate(monos)}
    f = ideal.field
    rows = []
    for g in basis:
        row = [f.zero()] * len(monos)
        for m, c in g.terms.items():
            row[index[m]] = c
        rows.append(row)
    pivots = []
    for row in rows:
        for i, c in enumerate(row):
            if c != f.zero():
                pivots.append(i)
                break
    return monos, index, rows, pivots, basis


def _rank(field: FieldConfig, rows, ncols: int) -> int:
    if not len(rows):
        return 0
    if field.is_prime_field:
        mat = np.array(rows, dtype=np.int64).reshape(-1, ncols)
        _, pivots = rref_mod(mat, field.characteristic)
        return len(pivots)
    _, pivots = rref_fraction([list(r) for r in rows])
    return len(pivots)


class _QuadricStrandData:
    """Shared data for strand-one computations on one variety."""

    def __init__(self, v: Variety):
        if not v.is_nondegenerate():
            raise NondegeneracyError("variety lies in a hyperplane")
        self.v = v
        self.f = v.field
        self.nv = v.r + 1
        (self.m2, self.i2index, self.rows2,
         self.piv2, self.basis2) = _piece_matrix(v.ideal, 2)
        (self.m3, self.i3index, self.rows3,
         self.piv3, self.basis3) = _piece_matrix(v.ideal, 3)
        self.dim2 = len(self.rows2)
        self.dim3 = len(self.rows3)
        self._reps = None

    def reps(self):
        """rep[l][a] = coordinates of x_l·q_a in the RREF basis of I₃."""
        if self._reps is not None:
            return self._reps
        f = self.f
        nv = self.nv
        prime = f.is_prime_field
        p = f.characteristic
        if prime:
            basis3 = np.array(self.rows3, dtype=np.int64).reshape(
                self.dim3, len(self.m3))
            out = np.zeros((nv, self.dim2, self.dim3), dtype=np.int64)
        else:
            out = [[None] * self.dim2 for _ in range(nv)]
        for l in range(nv):
            shift = tuple(1 if j == l else 0 for j in range(nv))
            for a, q in enumerate(self.basis2):
                prod = q.mul_term(shift, f.one())
                vec = [f.zero()] * len(self.m3)
                for m, c in prod.terms.items():
                    vec[self.i3index[m]] = c
                if prime:
                    vrow = np.array(vec, dtype=np.int64)
                    coords = vrow[self.piv3] % p
                    if ((vrow - coords @ basis3) % p).any():
                        raise AssertionError("product escaped the cubic piece")
                    out[l, a] = coords
                else:
                    coords = [vec[i] for i in self.piv3]
                    resid = list(vec)
                    for ci, row in zip(coords, self.rows3):
                        if ci:
                            resid = [x - ci * y for x, y in zip(resid, row)]
                    if any(resid):
                        raise AssertionError("product escaped the cubic piece")
                    out[l][a] = coords
        self._reps = out
        return out

    def koszul_matrix(self, p_index: int):
        """Matrix of ∧^{p−1}V⊗I₂ → ∧^{p−2}V⊗I₃ for β_{p,1}."""
        nv = self.nv
        f = self.f
        rows_wedge = _wedge_basis(nv, p_index - 1)
        cols_wedge = _wedge_basis(nv, p_index - 2)
        cindex = {s: i for i, s in enumerate(cols_wedge)}
        reps = self.reps()
        nrows = len(rows_wedge) * self.dim2
        ncols = len(cols_wedge) * self.dim3
        if f.is_prime_field:
            mat = np.zeros((nrows, ncols), dtype=np.int64)
            pchar = f.characteristic
            for si, s in enumerate(rows_wedge):
                for pos, l in enumerate(s):
                    t = s[:pos] + s[pos + 1:]
                    ti = cindex[t]
                    sign = 1 if pos % 2 == 0 else pchar - 1
                    block = reps[l] if sign == 1 else (sign * reps[l]) % pchar
                    mat[si * self.dim2:(si + 1) * self.dim2,
                        ti * self.dim3:(ti + 1) * self.dim3] = block
            return mat, nrows, ncols
        mat = [[Fraction(0)] * ncols for _ in range(nrows)]
        for si, s in enumerate(rows_wedge):
            for pos, l in enumerate(s):
                t = s[:pos] + s[pos + 1:]
                ti = cindex[t]
                sign = 1 if pos % 2 == 0 else -1
                for a in range(self.dim2):
                    row = mat[si * self.dim2 + a]
                    coords = reps[l][a]
                    for b, cval in enumerate(coords):
                        if cval:
                            row[ti * self.dim3 + b] = sign * cval
        return mat, nrows, ncols

    def beta_p1(self, p_index: int) -> int:
        if p_index == 1:
            return self.dim2
        if self.dim2 == 0:
            return 0
        mat, nrows, ncols = self.koszul_matrix(p_index)
        return nrows - _rank(self.f, mat, ncols)

    def kernel_classes(self, p_index: int):
        mat, nrows, ncols = self.koszul_matrix(p_index)
        if self.f.is_prime_field:
            return kernel_mod(np.asarray(mat, dtype=np.int64),
                              self.f.characteristic)
        return kernel_fraction([list(r) for r in mat], ncols)


def betti_strand_one(v: Variety, upto: int | None = None) -> dict[int, int]:
    """β_{p,1} for p = 1..upto (default: the codimension)."""
    data = _QuadricStrandData(v)
    _, _, c = v.ndc()
    upto = c if upto is None else upto
    out = {}
    for p_index in range(1, max(upto, 1) + 1):
        out[p_index] = data.beta_p1(p_index)
    return out


def ell_invariant(v: Variety) -> int:
    """Length of the quadratic strand: min{p ≥ 1 : β_{p,1} = 0} − 1."""
    data = _QuadricStrandData(v)
    _, _, c = v.ndc()
    for p_index in range(1, c + 2):
        if data.beta_p1(p_index) == 0:
            return p_index - 1
    raise AssertionError("quadratic strand failed to terminate by p = c + 1")


# ---------------------------------------------------------------------------
# second strand
# ---------------------------------------------------------------------------

def _coordinate_ring_pieces(v: Variety):
    """Standard-monomial bases of (S_X)_1..3 and multiplication tables."""
    gb = v.ideal.groebner_basis(GREVLEX)
    lms = [g.leading_monomial(GREVLEX) for g in gb]
    nv = v.r + 1
    f = v.field

    def std(t):
        return [m for m in monomials_of_degree(nv, t)
                if not any(monomial_divides(lm, m) for lm in lms)]

    bases = {t: std(t) for t in (1, 2, 3)}
    index = {t: {m: i for i, m in enumerate(bases[t])} for t in (1, 2, 3)}
    mult: dict = {}
    for t in (1, 2):
        for m in bases[t]:
            for l in range(nv):
                prod = tuple(e + (1 if j == l else 0) for j, e in enumerate(m))
                nf = reduce(Polynomial.monomial(nv, f, prod), gb, GREVLEX)
                vec = [f.zero()] * len(bases[t + 1])
                for mm, c in nf.terms.items():
                    vec[index[t + 1][mm]] = c
                mult[(t, m, l)] = vec
    return bases, index, mult


def betti_strand_two(v: Variety, bound: int | None = None) -> dict[int, int]:
    """b2[i] for i = 0..bound; b2[0] is the cubic minimal generator count."""
    _, _, c = v.ndc()
    cap = c + 1
    if bound is None:
        bound = cap
    if bound > cap:
        warnings.warn(
            f"second-strand bound {bound} clipped to codim + 1 = {cap}")
        bound = cap
    f = v.field
    nv = v.r + 1
    if v.ideal.is_zero():
        return {i: 0 for i in range(bound + 1)}
    bases, _, mult = _coordinate_ring_pieces(v)
    b1_, b2_, b3_ = (len(bases[1]), len(bases[2]), len(bases[3]))

    def diff_matrix(k: int, src_t: int):
        """∧^k V⊗(S_X)_{src_t} → ∧^{k−1}V⊗(S_X)_{src_t+1}."""
        rows_wedge = _wedge_basis(nv, k)
        cols_wedge = _wedge_basis(nv, k - 1)
        cindex = {s: i for i, s in enumerate(cols_wedge)}
        src_dim = len(bases[src_t])
        dst_dim = len(bases[src_t + 1])
        nrows = len(rows_wedge) * src_dim
        ncols = len(cols_wedge) * dst_dim
        prime = f.is_prime_field
        if prime:
            mat = np.zeros((nrows, ncols), dtype=np.int64)
        else:
            mat = [[Fraction(0)] * ncols for _ in range(nrows)]
        for si, s in enumerate(rows_wedge):
            for pos, l in enumerate(s):
                t = s[:pos] + s[pos + 1:]
                ti = cindex[t]
                sign = 1 if pos % 2 == 0 else -1
                for a, m in enumerate(bases[src_t]):
                    vec = mult[(src_t, m, l)]
                    ri = si * src_dim + a
                    for b, cval in enumerate(vec):
                        if cval:
                            val = cval if sign == 1 else f.neg(cval)
                            if prime:
                                mat[ri, ti * dst_dim + b] = val
                            else:
                                mat[ri][ti * dst_dim + b] = val
        return mat, nrows, ncols

    out = {}
    for i in range(bound + 1):
        # homology at ∧^{i+1}V⊗(S_X)₂ computes the ideal-side Tor_i in
        # internal degree i+3
        k_mid = i + 1
        mid_mat, mid_rows, mid_cols = diff_matrix(k_mid, 2)
        rank_mid = _rank(f, mid_mat, mid_cols) if mid_rows else 0
        in_mat, in_rows, in_cols = diff_matrix(k_mid + 1, 1)
        rank_in = _rank(f, in_mat, in_cols) if in_rows else 0
        kernel_dim = mid_rows - rank_mid
        out[i] = kernel_dim - rank_in
        if out[i] < 0:
            raise AssertionError("negative strand homology")
    return out


def green_lazarsfeld_index(v: Variety, bound: int | None = None,
                           reg_hint: int | None = None):
    """Largest j with b2 vanishing through j: −1 when cubic generators exist,
    +∞ when the strand vanishes through the bound and 2-regularity certifies
    vanishing everywhere, otherwise the largest prefix of zeros (a lower
    bound, reported together with the computed bound)."""
    _, _, c = v.ndc()
    cap = c + 1 if bound is None else bound
    b2 = betti_strand_two(v, cap)
    if b2.get(0, 0) > 0:
        return -1
    j = 0
    while j + 1 <= cap and b2.get(j + 1, 0) == 0:
        j += 1
    if j == cap:
        reg_val = reg_hint
        if reg_val is None:
            try:
                reg_val = regularity_via_gin(v, seed=0)
            except GenericityError:
                reg_val = None
        if reg_val is not None and reg_val <= 2:
            return INF
    return j


@dataclass
class StrandTable:
    """Quadratic and second strand values with the derived invariants."""

    b1: dict[int, int]
    b2: dict[int, int]
    b2_bound: int
    ell: int
    gl_index: object  # int, −1 sentinel, or +∞


def strand_table(v: Variety, reg_hint: int | None = None) -> StrandTable:
    _, _, c = v.ndc()
    b1 = betti_strand_one(v, upto=c)
    ell = ell_invariant(v)
    bound = c + 1
    b2 = betti_strand_two(v, bound)
    gl = green_lazarsfeld_index(v, bound, reg_hint=reg_hint)
    return StrandTable(b1=b1, b2=b2, b2_bound=bound, ell=ell, gl_index=gl)


# ---------------------------------------------------------------------------
# regularity via generic initial ideals
# ---------------------------------------------------------------------------

def _random_invertible(nvars: int, f: FieldConfig, rng: random.Random):
    for _ in range(50):
        m = [[_random_field_element(rng, f) for _ in range(nvars)]
             for _ in range(nvars)]
        try:
            from .linalg import invert_matrix
            invert_matrix(f, m)
            return m
        except ValueError:
            continue
    raise GenericityError("could not draw an invertible matrix")


def _borel_fixed(lms: list[tuple]) -> bool:
    for m in lms:
        for j, e in enumerate(m):
            if not e:
                continue
            for i in range(j):
                swapped = tuple(v + 1 if idx == i else (v - 1 if idx == j else v)
                                for idx, v in enumerate(m))
                if not any(monomial_divides(g, swapped) for g in lms):
                    return False
    return True


def regularity_via_gin(v: Variety, seed=0) -> int:
    """Max generator degree of the generic initial ideal (grevlex).

    Two independent coordinate changes must produce the same initial ideal and
    pass the Borel-fixedness check; retried with fresh randomness, then a
    genericity failure is raised. The zero ideal has regularity 0.
    """
    if v.ideal.is_zero():
        return 0
    f = v.field
    if f.is_prime_field and f.characteristic < 50:
        warnings.warn("small characteristic: Borel theory may misbehave")
    for attempt in range(10):
        rng = random.Random(f"gin:{seed}:{attempt}")
        lm_sets = []
        for _ in range(2):
            m = _random_invertible(v.r + 1, f, rng)
            changed = v.ideal.substitute(m)
            gb = changed.groebner_basis(GREVLEX)
            lm_sets.append(sorted(g.leading_monomial(GREVLEX) for g in gb))
        if lm_sets[0] != lm_sets[1]:
            continue
        lms = lm_sets[0]
        if not _borel_fixed(lms):
            continue
        return max(sum(m) for m in lms)
    raise GenericityError("generic initial ideal unstable after retries")


# ---------------------------------------------------------------------------
# syzygy variety extraction
# ---------------------------------------------------------------------------

def extract_syzygy_variety(v: Variety, seed=0) -> Variety:
    """Variety of minimal degree containing v, recovered from a kernel class
    at the top of the quadratic strand.

    The class's coefficient quadrics generate a candidate ideal, saturated by
    a generic linear form; the postconditions (dimension n+1, minimal degree,
    containment of v) are verified rather than assumed.
    """
    n, d, c = v.ndc()
    if c < 2:
        raise InputContractError("codimension at least 2 required")
    if d == c + 1:
        raise InputContractError(
            "input already has minimal degree; nothing to extract")
    if d < c + 2:
        raise InputContractError("degree below the minimal-degree range")
    data = _QuadricStrandData(v)
    if data.beta_p1(c - 1 if c > 2 else 1) == 0:
        raise InputContractError("top quadratic strand value vanishes")
    f = v.field
    nv = v.r + 1
    if c == 2:
        wedges = [()]
        classes = [[f.one() if i == j else f.zero()
                    for i in range(data.dim2)] for j in range(data.dim2)]
    else:
        wedges = _wedge_basis(nv, c - 2)
        classes = data.kernel_classes(c - 1)
    candidates = list(range(min(len(classes), 3)))
    rng = random.Random(f"extract:{seed}")
    failure = None
    for trial in range(len(candidates) + 3):
        if trial < len(candidates):
            vec = classes[candidates[trial]]
        else:
            if not len(classes):
                break
            coeffs = [_random_field_element(rng, f) for _ in classes]
            if f.is_prime_field:
                vec = (np.tensordot(np.array(coeffs, dtype=np.int64),
                                    np.asarray(classes, dtype=np.int64), 1)
                       % f.characteristic)
            else:
                vec = [sum((a * row[i] for a, row in zip(coeffs, classes)),
                           Fraction(0)) for i in range(len(classes[0]))]
        quadrics = _class_quadrics(data, wedges, vec)
        if not quadrics:
            continue
        try:
            candidate = _verified_container(v, quadrics, rng)
            return candidate
        except AssertionError as exc:
            failure = exc
            continue
    raise ExtractionError(
        f"no verified minimal-degree container: {failure}", candidate=None)


def _class_quadrics(data: _QuadricStrandData, wedges, vec) -> list[Polynomial]:
    f = data.f
    out = []
    dim2 = data.dim2
    for si in range(len(wedges)):
        block = vec[si * dim2:(si + 1) * dim2]
        q = Polynomial.zero(data.nv, f)
        nonzero = False
        for a, cval in enumerate(block):
            if cval:
                nonzero = True
                q = q + data.basis2[a].scale(f.convert(int(cval))
                                             if f.is_prime_field else cval)
        if nonzero and not q.is_zero():
            out.append(q)
    return out


def _verified_container(v: Variety, quadrics, rng: random.Random) -> Variety:
    from .errors import EmptyVarietyError
    f = v.field
    nv = v.r + 1
    n, d, c = v.ndc()
    ideal = Ideal(nv, f, quadrics)
    while True:
        terms = {}
        for i in range(nv):
            cval = _random_field_element(rng, f)
            if cval != f.zero():
                terms[tuple(1 if j == i else 0 for j in range(nv))] = \
                    f.convert(cval)
        if terms:
            ell = Polynomial(nv, f, terms)
            break
    try:
        saturated = ideal.saturate(ell)
        h = saturated.hilbert()
    except EmptyVarietyError as exc:
        raise AssertionError(f"candidate collapsed: {exc}") from exc
    assert h.n == n + 1, "container dimension is not n + 1"
    cody = v.r - h.n
    assert h.degree == cody + 1, "container is not of minimal degree"
    assert v.ideal.contains_ideal(saturated), "container does not contain input"
    return Variety(v.r, saturated, totally_real=v.totally_real,
                   label=f"{v.label}-container" if v.label else "container")
