"""Koszul strand numbers, regularity via gin, syzygy-variety extraction."""

import math

import pytest

from qplab.errors import InputContractError, NondegeneracyError
from qplab.fields import GF30011, GF32003
from qplab.groebner import Ideal
from qplab.hilbert import binomial
from qplab.strands import (betti_strand_one, betti_strand_two, ell_invariant,
                           extract_syzygy_variety, green_lazarsfeld_index,
                           regularity_via_gin, strand_table)
from qplab.varieties import (Variety, cmr_curve, projective_space,
                             rational_normal_curve, scroll, veronese)

P = GF32003


def eagon_northcott(c, p):
    """Closed-form quadratic strand of a minimal-degree variety."""
    return p * binomial(c + 1, p + 1)


def test_twisted_cubic_strand_one():
    cub = rational_normal_curve(3, P)
    b1 = betti_strand_one(cub, upto=3)
    assert b1 == {1: 3, 2: 2, 3: 0}
    assert ell_invariant(cub) == 2


def test_scroll12_strand_one():
    s = scroll([1, 2], P)
    b1 = betti_strand_one(s, upto=2)
    assert b1 == {1: 3, 2: 2}
    assert ell_invariant(s) == 2


def test_eagon_northcott_oracle_small():
    for make, c in ((lambda: rational_normal_curve(4, P), 3),
                    (lambda: veronese(2, 2, P), 3),
                    (lambda: scroll([2, 2], P), 3)):
        v = make()
        b1 = betti_strand_one(v, upto=c)
        for p_idx in range(1, c + 1):
            assert b1[p_idx] == eagon_northcott(c, p_idx), (v.label, p_idx)
        assert ell_invariant(v) == c


def test_strand_prime_stability():
    for field in (P, GF30011):
        v = rational_normal_curve(4, field)
        assert betti_strand_one(v, upto=3) == {1: 6, 2: 8, 3: 3}


def test_empty_strand():
    # plane curve re-embedded low: no quadrics at all
    from qplab.varieties import plane_curve
    c = plane_curve("x0^3 + x1^3 + x2^3", P)
    assert betti_strand_one(c, upto=2) == {1: 0, 2: 0}
    assert ell_invariant(c) == 0


def test_degenerate_rejected():
    v = Variety(3, Ideal.from_texts(4, P, ["x0"]))
    with pytest.raises(NondegeneracyError):
        betti_strand_one(v)


def test_strand_two_twisted_cubic_vanishes():
    cub = rational_normal_curve(3, P)
    b2 = betti_strand_two(cub)
    assert all(v == 0 for v in b2.values())
    assert green_lazarsfeld_index(cub) == math.inf


def test_strand_two_projective_space():
    ps = projective_space(3, P)
    b2 = betti_strand_two(ps, 2)
    assert all(v == 0 for v in b2.values())


def test_strand_table_contents():
    cub = rational_normal_curve(3, P)
    table = strand_table(cub)
    assert table.ell == 2
    assert table.gl_index == math.inf
    assert table.b2_bound == 3
    assert table.b1[1] == 3


def test_regularity_minimal_degree_and_zero():
    assert regularity_via_gin(rational_normal_curve(3, P), 1) == 2
    assert regularity_via_gin(scroll([1, 2], P), 1) == 2
    assert regularity_via_gin(projective_space(4, P), 1) == 0


def test_regularity_hypersurface():
    v = Variety(3, Ideal.from_texts(4, P, ["x0^3 + x1^3 + x2^3 + x3^3"]))
    assert regularity_via_gin(v, 1) == 3


def test_extract_rejects_minimal_degree():
    with pytest.raises(InputContractError):
        extract_syzygy_variety(rational_normal_curve(4, P))


def test_extract_from_cmr_curve():
    curve = cmr_curve(5, 8, True, seed=2, field=P)
    container = extract_syzygy_variety(curve)
    n, d, c = container.ndc()
    assert (n, d, c) == (2, 3, 2)
    # equality with the known container in degree 2 and as ideals
    known = scroll([1, 3], P)
    assert container.ideal.equals(known.ideal)
    assert curve.ideal.contains_ideal(container.ideal)
