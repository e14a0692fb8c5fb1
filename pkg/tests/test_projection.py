"""Inner projections and partial elimination ideals."""

import pytest

from qplab.errors import MembershipError, RankError
from qplab.fields import GF32003
from qplab.groebner import Ideal
from qplab.poly import Polynomial
from qplab.projection import (partial_elimination_ideals,
                              pei_dimension_identity_check,
                              project_from_points)
from qplab.varieties import (Variety, projective_space, quintic_del_pezzo,
                             rational_normal_curve, sample_point, scroll,
                             veronese)

P = GF32003


def test_project_twisted_cubic_from_own_point():
    cub = rational_normal_curve(3, P)
    pt = sample_point(cub, 0)
    conic = project_from_points(cub, [pt])
    assert conic.r == 2
    assert conic.ndc() == (1, 2, 1)
    assert conic.quadric_space_dim() == 1
    # image parameterization still lands on the projected curve
    q = sample_point(conic, 5)
    assert conic.contains_point(q)


def test_project_methods_agree():
    cub = rational_normal_curve(3, P)
    pt = sample_point(cub, 0)
    a = project_from_points(cub, [pt], method="elim")
    b = project_from_points(cub, [pt], method="graded")
    assert a.ideal.equals(b.ideal)

    ver = veronese(2, 2, P)
    vpt = sample_point(ver, 1)
    a2 = project_from_points(ver, [vpt], method="elim")
    b2 = project_from_points(ver, [vpt], method="graded")
    assert a2.ideal.equals(b2.ideal)


def test_project_quadric_from_smooth_point():
    q = Variety(4, Ideal.from_texts(5, P, ["x0*x1 - x2^2 + x3*x4"]))
    pt = (1, 0, 0, 0, 0)
    assert q.contains_point(pt)
    img = project_from_points(q, [pt], method="elim")
    assert img.r == 3
    assert img.ideal.is_zero()


def test_membership_and_rank_errors():
    cub = rational_normal_curve(3, P)
    with pytest.raises(MembershipError):
        project_from_points(cub, [(1, 1, 1, 2)])
    pt = sample_point(cub, 0)
    with pytest.raises(RankError):
        project_from_points(cub, [pt, pt])


def test_projection_order_independent():
    ver = veronese(2, 2, P)
    p1 = sample_point(ver, 11)
    p2 = sample_point(ver, 12)
    a = project_from_points(ver, [p1, p2], method="elim")
    b = project_from_points(ver, [p2, p1], method="elim")
    assert a.ideal.equals(b.ideal)


def sample_source(v, seed):
    # source parameters behind the sampled point with the same seed
    import random
    from qplab.varieties import _sample_source_point
    rng = random.Random(f"sample:{seed}")
    return _sample_source_point(v.param_source, v.param.source_nvars, rng,
                                v.field)


def test_projection_composition_via_ideals():
    ver = veronese(2, 2, P)
    p1 = sample_point(ver, 31)
    p2 = sample_point(ver, 32)
    both = project_from_points(ver, [p1, p2], method="elim")
    step1 = project_from_points(ver, [p1], method="elim")
    src = sample_source(ver, 32)
    img_p2 = step1.param.evaluate(src)
    step2 = project_from_points(step1, [img_p2], method="elim")
    assert step2.ideal.equals(both.ideal)


def test_pei_twisted_cubic():
    cub = rational_normal_curve(3, P)
    pt = sample_point(cub, 0)
    pei = partial_elimination_ideals(cub, pt, 1)
    assert pei.dim(0, 2) == 1
    assert pei.dim(1, 1) == 2
    report = pei_dimension_identity_check(cub, pt)
    assert report.holds and report.dim_i2 == 3
    assert (report.dim_projected_i2, report.dim_k1_1) == (1, 2)


def test_pei_projective_space_trivial():
    ps = projective_space(3, P)
    pt = sample_point(ps, 0)
    pei = partial_elimination_ideals(ps, pt, 2)
    for ideal in pei.ideals:
        assert ideal.is_zero()


def test_pei_quadric_hypersurface():
    q = Variety(3, Ideal.from_texts(4, P, ["x0*x1 + x2^2 + x3^2"]))
    pt = (1, 0, 0, 0)
    pei = partial_elimination_ideals(q, pt, 1)
    assert pei.dim(0, 2) == 0
    assert pei.dim(1, 1) == 1


def test_pei_identity_veronese_and_delpezzo():
    ver = veronese(2, 2, P)
    rep = pei_dimension_identity_check(ver, sample_point(ver, 3))
    assert rep.holds and rep.dim_i2 == 6
    assert (rep.dim_projected_i2, rep.dim_k1_1) == (3, 3)

    dp = quintic_del_pezzo(P)
    rep2 = pei_dimension_identity_check(dp, sample_point(dp, 4))
    assert rep2.holds and rep2.dim_i2 == 5


def test_pei_zero_quadric_case():
    # a variety with no quadrics at all: both sides vanish
    from qplab.varieties import plane_curve
    cubic_curve = plane_curve("x0^3 + x1^3 + x2^3", P)
    rep = pei_dimension_identity_check(cubic_curve,
                                       sample_point(cubic_curve, 1))
    assert rep.holds and rep.dim_i2 == 0
    assert rep.dim_projected_i2 == 0 and rep.dim_k1_1 == 0
