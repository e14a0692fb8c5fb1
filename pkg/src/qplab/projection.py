"""Linear projections from points of a variety and partial elimination ideals.

The coordinate change sends the chosen points to the first coordinate points
(completion to a basis by greedy pivots, deterministic), after which the
projected ideal is the elimination ideal of the front block. Because the
varieties here are prime by construction, the elimination ideal is already
saturated and prime, so it is used directly as the ideal of the image.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, MembershipError, RankError
from .fields import FieldConfig
from .groebner import Ideal, monomials_of_degree
from .linalg import Echelon, invert_matrix, rref_fraction, rref_mod
from .orders import GREVLEX, Block
from .poly import Polynomial
from .varieties import RationalMap, Variety


def points_matrix(points, nvars: int, f: FieldConfig):
    return [[f.convert(x) for x in pt] for pt in points]


def points_rank(points, nvars: int, f: FieldConfig) -> int:
    rows = points_matrix(points, nvars, f)
    if f.is_prime_field:
        _, pivots = rref_mod(np.array(rows, dtype=np.int64), f.characteristic)
    else:
        _, pivots = rref_fraction(rows)
    return len(pivots)


def completion_matrix(points, nvars: int, f: FieldConfig):
    """Invertible B whose first columns are the given points.

    Completion picks coordinate vectors at the non-pivot columns of the point
    matrix, so the result depends only on the span (deterministic, and
    independent of the listing order of the points up to front permutation).
    """
    rows = points_matrix(points, nvars, f)
    if f.is_prime_field:
        _, pivots = rref_mod(np.array(rows, dtype=np.int64), f.characteristic)
    else:
        _, pivots = rref_fraction(rows)
    if len(pivots) != len(points):
        raise RankError("points are linearly dependent")
    pivot_set = set(pivots)
    cols = [list(pt) for pt in rows]
    for j in range(nvars):
        if j not in pivot_set:
            cols.append([f.one() if i == j else f.zero() for i in range(nvars)])
    # columns to matrix
    return [[cols[j][i] for j in range(nvars)] for i in range(nvars)]


def project_from_points(v: Variety, points, *, method: str = "auto") -> Variety:
    """Inner projection of v from points lying on it.

    method "elim" changes coordinates and eliminates the front block;
    "graded" assembles the projected ideal degree by degree as
    (I ∩ R)_t = I_t ∩ R_t, valid when the projected ideal's generation degree
    is known (curve models carry that bound), and verified via Hilbert data.
    """
    f = v.field
    k = len(points)
    if k == 0:
        return v
    pts = [tuple(f.convert(x) for x in pt) for pt in points]
    for pt in pts:
        if not v.contains_point(pt):
            raise MembershipError(f"projection center {pt} is not on the variety")
    if points_rank(pts, v.r + 1, f) != k:
        raise RankError("projection centers are linearly dependent")
    b = completion_matrix(pts, v.r + 1, f)
    changed = v.ideal.substitute(b)
    if method == "auto":
        method = "graded" if (v.gen_degree_bound is not None
                              and v.gen_degree_bound <= 3) else "elim"
    if method == "graded":
        try:
            projected = _eliminate_graded(changed, k, v.gen_degree_bound)
            _verify_projection(v, projected, k)
        except (AssertionError, DomainError):
            projected = changed.elimination_ideal(k)
    elif method == "elim":
        projected = changed.elimination_ideal(k)
    else:
        raise DomainError(f"unknown method {method!r}")
    new_param = None
    if v.param is not None:
        binv = invert_matrix(f, b)
        comps = []
        for i in range(k, v.r + 1):
            acc = Polynomial.zero(v.param.source_nvars, f)
            for j, comp in enumerate(v.param.components):
                c = binv[i][j]
                if c != f.zero():
                    acc = acc + comp.scale(c)
            comps.append(acc)
        if any(not c.is_zero() for c in comps):
            new_param = RationalMap(v.param.source_nvars, v.r + 1 - k,
                                    tuple(comps))
    return Variety(v.r - k, projected, param=new_param,
                   totally_real=v.totally_real, param_source=v.param_source,
                   gen_degree_bound=v.gen_degree_bound,
                   label=f"{v.label}/proj{k}" if v.label else "")


def _verify_projection(v: Variety, projected: Ideal, k: int) -> None:
    n0, d0, _ = v.ndc()
    h = Ideal(projected.nvars, projected.field,
              projected.gens).hilbert()
    assert h.n == n0, "projection changed the dimension"
    assert h.degree == d0 - k, "projection degree bookkeeping failed"


def _eliminate_graded(changed: Ideal, k: int, bound: int) -> Ideal:
    """Degree-t pieces of the elimination ideal by linear algebra.

    Columns are ordered front-involving monomials first, so RREF rows whose
    pivots land in the back section are supported on back variables only and
    form a basis of I_t ∩ R_t.
    """
    f = changed.field
    nv = changed.nvars
    gens: list[Polynomial] = []
    prev_piece: list[Polynomial] = []
    for t in range(2, bound + 1):
        monos = monomials_of_degree(nv, t)
        front = [m for m in monos if any(m[:k])]
        back = [m for m in monos if not any(m[:k])]
        ordered = front + back
        index = {m: i for i, m in enumerate(ordered)}
        rows = []
        for g in changed.gens:
            d = g.degree()
            if d > t:
                continue
            for extra in _mult_monomials(nv, t - d):
                shifted = g.mul_term(extra, f.one())
                rows.append(_to_vector(shifted, index, f))
        piece_rows = _rref_rows(f, rows, len(ordered))
        nfront = len(front)
        back_polys = []
        for row in piece_rows:
            if any(c != 0 for c in row[:nfront]):
                continue
            terms = {}
            for m, c in zip(back, row[nfront:]):
                if c:
                    terms[m[k:]] = (int(c) if f.is_prime_field else c)
            back_polys.append(Polynomial(nv - k, f, terms))
        # keep only generators new at this degree
        small = monomials_of_degree(nv - k, t)
        small_index = {m: i for i, m in enumerate(small)}
        span = Echelon(f, len(small))
        for g in prev_piece:
            for i in range(nv - k):
                shifted = g.mul_term(
                    tuple(1 if j == i else 0 for j in range(nv - k)), f.one())
                span.add(_to_vector(shifted, small_index, f))
        for poly in back_polys:
            if span.add(_to_vector(poly, small_index, f)):
                gens.append(poly)
        prev_piece = back_polys
    return Ideal(nv - k, f, gens)


def _mult_monomials(nvars: int, extra: int):
    from itertools import combinations_with_replacement
    for combo in combinations_with_replacement(range(nvars), extra):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def _to_vector(p: Polynomial, index: dict, f: FieldConfig):
    row = [f.zero()] * len(index)
    for m, c in p.terms.items():
        row[index[m]] = c
    return row


def _rref_rows(f: FieldConfig, rows, ncols: int):
    if not rows:
        return []
    if f.is_prime_field:
        r, pivots = rref_mod(np.array(rows, dtype=np.int64), f.characteristic)
        return [list(map(int, row)) for row in r[:len(pivots)]]
    r, pivots = rref_fraction(rows)
    return r[:len(pivots)]


# ---------------------------------------------------------------------------
# partial elimination ideals
# ---------------------------------------------------------------------------

@dataclass
class PEIResult:
    """Partial elimination ideals at a point placed at [1:0:…:0].

    ideals[i] collects the leading x0-coefficients of Gröbner basis members
    of x0-degree ≤ i, an ascending chain; ideals[0] is the ideal of the inner
    projection from the point.
    """

    center: tuple
    ideals: list[Ideal]
    dims_deg: dict

    def dim(self, i: int, t: int) -> int:
        return self.dims_deg[(i, t)]

    def table_rows(self):
        for (i, t) in sorted(self.dims_deg):
            yield i, t, self.dims_deg[(i, t)]


def partial_elimination_ideals(v: Variety, point, m: int,
                               max_table_degree: int = 3) -> PEIResult:
    """PEI chain K_0 ⊆ … ⊆ K_m of the variety's ideal at the given point."""
    if m < 0:
        raise DomainError("max index must be nonnegative")
    f = v.field
    pt = tuple(f.convert(x) for x in point)
    if not v.contains_point(pt):
        raise MembershipError(f"{pt} is not on the variety")
    b = completion_matrix([pt], v.r + 1, f)
    changed = v.ideal.substitute(b)
    gb = changed.groebner_basis(Block(1))
    buckets: dict[int, list[Polynomial]] = {}
    for g in gb:
        e = max(mono[0] for mono in g.terms)
        lead_terms = {mono[1:]: c for mono, c in g.terms.items()
                      if mono[0] == e}
        buckets.setdefault(e, []).append(
            Polynomial(v.r, f, lead_terms, _clean=True))
    ideals = []
    for i in range(m + 1):
        gens: list[Polynomial] = []
        for e in sorted(buckets):
            if e <= i:
                gens.extend(buckets[e])
        ideals.append(Ideal(v.r, f, gens))
    # ascending chain check on generators
    for i in range(1, m + 1):
        for g in ideals[i - 1].gens:
            assert ideals[i].contains(g), "PEI chain violated"
    dims = {}
    for i, ki in enumerate(ideals):
        for t in range(max_table_degree + 1):
            dims[(i, t)] = ki.dim_graded_piece(t)
    return PEIResult(center=pt, ideals=ideals, dims_deg=dims)


@dataclass
class PEIIdentityReport:
    holds: bool
    dim_i2: int
    dim_projected_i2: int
    dim_k1_1: int


def pei_dimension_identity_check(v: Variety, point) -> PEIIdentityReport:
    """Check dim I₂ = dim I(X_q)₂ + dim (K₁)₁ at the given point of X."""
    pei = partial_elimination_ideals(v, point, 1, max_table_degree=2)
    lhs = v.ideal.dim_graded_piece(2)
    t1 = pei.dim(0, 2)
    t2 = pei.dim(1, 1)
    return PEIIdentityReport(holds=(lhs == t1 + t2), dim_i2=lhs,
                             dim_projected_i2=t1, dim_k1_1=t2)
