"""Variety constructors, image of maps, sampling, secant orders."""

import pytest

from qplab.errors import (DomainError, IndeterminacyError, MembershipError,
                          NoSamplerError)
from qplab.fields import GF32003, QQ
from qplab.groebner import monomials_of_degree
from qplab.orders import GREVLEX
from qplab.poly import Polynomial
from qplab.varieties import (RationalMap, Variety, cmr_curve, coordinate_line,
                             image_of_map, line_through_points, plane_curve,
                             projective_space, quintic_del_pezzo,
                             rational_normal_curve, sample_point, scroll,
                             secant_order, veronese)

P = GF32003


def twisted_cubic_via_map(field=P, strategy="elim"):
    src = projective_space(1, field)
    comps = tuple(Polynomial.monomial(2, field, (3 - j, j)) for j in range(4))
    phi = RationalMap(2, 4, comps)
    return image_of_map(src, phi, strategy=strategy, gen_degree_bound=2)


def test_image_of_map_twisted_cubic_both_strategies():
    v1 = twisted_cubic_via_map(strategy="elim")
    v2 = twisted_cubic_via_map(strategy="graded")
    assert v1.ideal.equals(v2.ideal)
    assert v1.ndc() == (1, 3, 2)
    direct = rational_normal_curve(3, P)
    assert v1.ideal.equals(direct.ideal)


def test_image_of_map_identity():
    src = projective_space(2, P)
    comps = tuple(Polynomial.variable(3, P, i) for i in range(3))
    phi = RationalMap(3, 3, comps)
    img = image_of_map(src, phi, strategy="elim")
    assert img.ideal.is_zero()


def test_image_of_map_indeterminacy():
    curve = plane_curve("x0^3 - x1^2*x2", P)
    f = curve.ideal.gens[0]
    comps = (f, f.scale(2), f.scale(3))
    with pytest.raises(IndeterminacyError):
        image_of_map(curve, RationalMap(3, 3, comps), strategy="elim")


def test_veronese_surface():
    v = veronese(2, 2, P)
    assert v.r == 5
    assert v.quadric_space_dim() == 6
    assert v.ndc() == (2, 4, 3)
    # cross-check the graded route against plain elimination
    src = projective_space(2, P)
    comps = tuple(Polynomial.monomial(3, P, m)
                  for m in monomials_of_degree(3, 2))
    elim = image_of_map(src, RationalMap(3, 6, comps), strategy="elim")
    assert elim.ideal.equals(v.ideal)


def test_rational_normal_curves():
    for d in (3, 4, 5):
        v = rational_normal_curve(d, P)
        n, deg, c = v.ndc()
        assert (n, deg, c) == (1, d, d - 1)
        assert v.quadric_space_dim() == d * (d - 1) // 2


def test_scrolls():
    s12 = scroll([1, 2], P)
    assert s12.ndc() == (2, 3, 2)
    assert s12.quadric_space_dim() == 3

    s22 = scroll([2, 2], P)
    assert s22.ndc() == (2, 4, 3)

    cone = scroll([0, 0, 3], P)
    assert cone.r == 5
    assert cone.ndc() == (3, 3, 2)

    with pytest.raises(DomainError):
        scroll([0, 0], P)


def test_scroll_minimal_degree_quadric_count():
    for degs in ([1, 2], [2, 2], [1, 1, 2]):
        v = scroll(degs, P)
        n, d, c = v.ndc()
        assert d == c + 1
        assert v.quadric_space_dim() == (c + 1) * c // 2


def test_sample_points_on_constructors():
    for v in (rational_normal_curve(3, P), scroll([1, 2], P),
              veronese(2, 2, P)):
        for s in range(5):
            pt = sample_point(v, s)
            assert v.contains_point(pt)


def test_sample_point_distinct_seeds_differ():
    v = rational_normal_curve(3, P)
    assert sample_point(v, "a") != sample_point(v, "b")


def test_sample_point_on_projective_space():
    v = projective_space(2, P)
    pt = sample_point(v, 1)
    assert len(pt) == 3 and any(pt)


def test_sample_point_plane_curve_fallback():
    curve = plane_curve("x0^4 + x1^4 - x2^4", P, totally_real=True)
    pt = sample_point(curve, 3)
    assert curve.contains_point(pt)
    with pytest.raises(NoSamplerError):
        sample_point(plane_curve("x0^4 + x1^4 - x2^4", QQ), 3)


def test_quintic_del_pezzo():
    dp = quintic_del_pezzo(P)
    assert dp.r == 5
    assert dp.ndc() == (2, 5, 3)
    assert dp.quadric_space_dim() == 5
    # it lies on the Segre scroll(1,1,1) in the same coordinates
    segre = scroll([1, 1, 1], P)
    assert dp.ideal.contains_ideal(segre.ideal)
    pt = sample_point(dp, 0)
    assert dp.contains_point(pt)


def test_secant_orders_twisted_cubic():
    cub = rational_normal_curve(3, P)
    tangent = coordinate_line(3, P)  # tangent line at the first coordinate point
    assert secant_order(cub, tangent) == 2

    quartic = rational_normal_curve(4, P)
    p1 = (1, 2, 0, 1, 5)
    p2 = (0, 3, 1, 4, 1)
    generic = line_through_points(p1, p2, P, 4)
    assert secant_order(quartic, generic) == 0


def test_cmr_curve_on_scroll():
    c = cmr_curve(4, 6, True, seed=1, field=P)
    assert c.ndc() == (1, 6, 3)
    # lies on the surface scroll S(1, 2)
    s = scroll([1, 2], P)
    assert c.ideal.contains_ideal(s.ideal)
    assert secant_order(c, coordinate_line(4, P)) == 4


def test_cmr_curve_off_scroll():
    c = cmr_curve(4, 6, False, seed=1, field=P)
    assert c.ndc() == (1, 6, 3)
    cone = scroll([0, 0, 2], P)
    assert c.ideal.contains_ideal(cone.ideal)
    assert secant_order(c, coordinate_line(4, P)) == 4


def test_cmr_contract_error():
    with pytest.raises(DomainError):
        cmr_curve(4, 5, True, seed=0, field=P)
