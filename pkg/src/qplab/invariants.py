"""Quadratic persistence, Pythagoras-number bounds, and classification
predicates.

Quadratic persistence samples k-tuples of points on the variety itself,
checks linear independence, and takes the minimum of dim I(π_Γ X)₂ over the
tuples per level; the generic value is the minimum by Zariski-openness, so a
small number of samples per level is cheap insurance. The degree-2 piece of
the projected ideal is the intersection of I₂ with the quadrics in the back
variables after the coordinate change, computed by symmetric-matrix
congruence and a rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import (BadContainerError, DomainError, NondegeneracyError,
                     RankError, SamplingError, TotallyRealRequiredError)
from .groebner import monomials_of_degree
from .hilbert import binomial
from .linalg import rank_mod, rref_fraction
from .projection import completion_matrix, points_rank
from .varieties import Variety, sample_point


def quadric_count(v: Variety) -> int:
    """dim I(V)₂."""
    return v.ideal.dim_graded_piece(2)


def _symmetric_stack(v: Variety):
    """I₂ basis as symmetric matrices (prime field: one numpy stack)."""
    f = v.field
    nv = v.r + 1
    basis = v.ideal.graded_piece_basis(2)
    if f.is_prime_field:
        p = f.characteristic
        half = pow(2, p - 2, p)
        stack = np.zeros((len(basis), nv, nv), dtype=np.int64)
        for a, q in enumerate(basis):
            for m, c in q.terms.items():
                idx = [i for i, e in enumerate(m) for _ in range(e)]
                i, j = idx[0], idx[1]
                if i == j:
                    stack[a, i, i] = c % p
                else:
                    stack[a, i, j] = stack[a, j, i] = c * half % p
        return stack
    mats = []
    for q in basis:
        m0 = [[Fraction(0)] * nv for _ in range(nv)]
        for m, c in q.terms.items():
            idx = [i for i, e in enumerate(m) for _ in range(e)]
            i, j = idx[0], idx[1]
            if i == j:
                m0[i][i] = c
            else:
                m0[i][j] = m0[j][i] = c / 2
        mats.append(m0)
    return mats


def projected_quadric_dim(v: Variety, stack, points) -> int:
    """dim I(π_Γ V)₂ for the span of the given independent points of V."""
    f = v.field
    nv = v.r + 1
    k = len(points)
    if k == 0:
        return len(stack)
    b = completion_matrix(points, nv, f)
    if f.is_prime_field:
        p = f.characteristic
        bm = np.array(b, dtype=np.int64) % p
        if not len(stack):
            return 0
        transformed = bm.T[None] @ stack % p
        transformed = transformed @ bm % p
        front = transformed[:, :k, :].reshape(len(stack), -1)
        return len(stack) - rank_mod(front, p)
    # rational fallback: substitute and project on front-involving monomials
    rows = []
    monos = monomials_of_degree(nv, 2)
    front_monos = [m for m in monos if any(m[:k])]
    index = {m: i for i, m in enumerate(front_monos)}
    basis = v.ideal.graded_piece_basis(2)
    for q in basis:
        qq = q.substitute_linear(b)
        row = [Fraction(0)] * len(front_monos)
        for m, c in qq.terms.items():
            if m in index:
                row[index[m]] = c
        rows.append(row)
    if not rows:
        return 0
    _, pivots = rref_fraction(rows)
    return len(rows) - len(pivots)


@dataclass
class QpCertificate:
    """Value of qp with the sampling evidence that witnesses it."""

    value: int
    witness: tuple
    floor_evidence: dict[int, int]  # level -> min dim over tuples, all > 0
    seeds: dict
    samples_per_level: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": [[str(x) for x in pt] for pt in self.witness],
            "floor_evidence": {str(k): v
                               for k, v in sorted(self.floor_evidence.items())},
            "seeds": self.seeds,
            "samples_per_level": self.samples_per_level,
        }


def quadratic_persistence(v: Variety, samples: int = 3, seed=7) -> QpCertificate:
    """Least k with a k-tuple of independent points of V whose projection
    kills every quadric; terminates at k ≤ r + 1."""
    if samples < 2:
        raise DomainError("at least two sample tuples per level required")
    if not v.is_nondegenerate():
        raise NondegeneracyError("quadratic persistence needs I₁ = 0")
    stack = _symmetric_stack(v)
    dim2 = quadric_count(v)
    floor: dict[int, int] = {0: dim2}
    seeds = {"base": str(seed), "scheme": "level:sample:point:retry"}
    if dim2 == 0:
        return QpCertificate(0, (), {}, seeds, samples)
    f = v.field
    for k in range(1, v.r + 2):
        best = None
        best_points = None
        for s in range(samples):
            points = None
            for retry in range(30):
                cand = [sample_point(v, f"{seed}:{k}:{s}:{i}:{retry}")
                        for i in range(k)]
                if points_rank(cand, v.r + 1, f) == k:
                    points = cand
                    break
            if points is None:
                raise SamplingError(
                    "persistently drew linearly dependent point tuples")
            dim = projected_quadric_dim(v, stack, points)
            if best is None or dim < best:
                best, best_points = dim, points
        if best == 0:
            return QpCertificate(k, tuple(best_points), dict(floor),
                                 seeds, samples)
        floor[k] = best
    raise AssertionError("quadratic persistence exceeded r + 1")


@dataclass
class PyBounds:
    """Interval bounds for the Pythagoras number; never an exact claim."""

    lower: int
    upper: int | None
    lower_source: str
    upper_source: str
    totally_real: bool
    equality: bool = dc_field(default=False)

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "lower_source": self.lower_source,
            "upper_source": self.upper_source,
            "totally_real": self.totally_real,
            "equality": self.equality,
        }


def py_bounds(v: Variety, qp_cert: QpCertificate,
              container: Variety | None = None) -> PyBounds:
    """Interval for the Pythagoras number from the projection count and an
    optional totally real minimal-degree container."""
    if not v.totally_real:
        raise TotallyRealRequiredError(
            "Pythagoras bounds are only defined for totally real varieties")
    lower = v.r + 1 - qp_cert.value
    if container is None:
        return PyBounds(lower=lower, upper=v.r + 1,
                        lower_source="r+1-qp",
                        upper_source="ambient projective space",
                        totally_real=True, equality=(lower == v.r + 1))
    if not container.totally_real:
        raise BadContainerError("container must be totally real")
    if container.r != v.r or container.field != v.field:
        raise BadContainerError("container lives in a different space")
    cn, cd, cc = container.ndc()
    if cd != cc + 1:
        raise BadContainerError("container is not of minimal degree")
    if not v.ideal.contains_ideal(container.ideal):
        raise BadContainerError("containment verification failed")
    upper = cn + 1
    if upper < lower:
        raise BadContainerError("container bound contradicts the lower bound")
    return PyBounds(lower=lower, upper=upper, lower_source="r+1-qp",
                    upper_source=f"minimal-degree container dim {cn}",
                    totally_real=True, equality=(lower == upper))


@dataclass
class ClassificationVerdict:
    is_minimal_degree: bool
    is_d_c2: bool
    castelnuovo_divisor: bool
    strand_divisor: bool | None
    consistency: dict

    def to_dict(self) -> dict:
        return {
            "is_minimal_degree": self.is_minimal_degree,
            "is_d_c2": self.is_d_c2,
            "castelnuovo_divisor": self.castelnuovo_divisor,
            "strand_divisor": self.strand_divisor,
            "consistency": dict(sorted(self.consistency.items())),
        }


def classify(v: Variety, qp_value: int | None = None,
             ell_value: int | None = None, b21: int | None = None,
             strand_budget: float = 2e7) -> ClassificationVerdict:
    """Classification predicates; the strand-divisor test is skipped (None)
    when its Koszul matrix would exceed the size budget."""
    n, d, c = v.ndc()
    dim2 = quadric_count(v)
    is_md = (d == c + 1)
    is_dc2 = (d == c + 2)
    cast = (d >= 2 * c + 3) and (dim2 == binomial(c, 2))
    strand: bool | None = None
    if c >= 2 and d >= c + 3:
        if c == 2:
            strand = dim2 > 0
        else:
            nv = v.r + 1
            dim3 = v.ideal.dim_graded_piece(3) if dim2 else 0
            size = (binomial(nv, c - 2) * dim2) * \
                max(binomial(nv, c - 3) * dim3, 1)
            if size <= strand_budget:
                from .strands import betti_strand_one
                strand = betti_strand_one(v, upto=c - 1)[c - 1] > 0
    elif c >= 2:
        strand = False
    consistency: dict = {}
    if c >= 3 and d == c + 2 and qp_value is not None:
        consistency["next_to_maximal_qp"] = (qp_value == c - 1)
    if c == 3 and d >= 6 and qp_value is not None and ell_value is not None:
        consistency["strand_length_equals_qp"] = (ell_value == qp_value)
    if c >= 3 and qp_value is not None and b21 is not None:
        consistency["second_strand_step_iff_qp_ge_2"] = \
            ((b21 > 0) == (qp_value >= 2))
    return ClassificationVerdict(is_minimal_degree=is_md, is_d_c2=is_dc2,
                                 castelnuovo_divisor=cast,
                                 strand_divisor=strand,
                                 consistency=consistency)
