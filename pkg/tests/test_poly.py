"""Polynomial arithmetic, parsing, orders, and reduction."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qplab.fields import GF32003, QQ, FieldConfig, FieldMismatchError
from qplab.orders import GREVLEX, LEX, Block, monomial_mul
from qplab.poly import Polynomial, RingMismatchError, reduce

P = GF32003


def poly(text, nvars=4, field=P):
    return Polynomial.parse(text, nvars, field)


def test_parse_roundtrip():
    f = poly("3*x0^2*x3 - x1*x2 + 2")
    assert f.terms[(2, 0, 0, 1)] == 3
    assert f.terms[(0, 1, 1, 0)] == P.convert(-1)
    assert Polynomial.parse(f.to_text(), 4, P) == f


def test_parse_rational_and_comment():
    f = Polynomial.parse("1/2*x0^2 - x1^2  # a conic", 2, QQ)
    assert f.evaluate([2, 1]) == 1


def test_parse_errors():
    with pytest.raises(Exception):
        poly("x9", nvars=4)
    with pytest.raises(Exception):
        poly("x0 x1")  # missing *


def test_field_validation():
    with pytest.raises(ValueError):
        FieldConfig(15)
    with pytest.raises(ValueError):
        FieldConfig(2)
    assert FieldConfig(0).kind == "rationals"
    assert FieldConfig(32003).kind == "prime-field"


def test_ring_and_field_mismatch():
    f = poly("x0")
    g = Polynomial.parse("x0", 3, P)
    with pytest.raises(RingMismatchError):
        f + g
    h = Polynomial.parse("x0", 4, QQ)
    with pytest.raises(FieldMismatchError):
        f + h


def test_homogeneity_and_degree():
    assert poly("x0*x2 - x1^2").is_homogeneous()
    assert not poly("x0 + x1^2").is_homogeneous()
    assert poly("x0^3").degree() == 3
    assert Polynomial.zero(4, P).degree() == -1


def test_grevlex_vs_lex():
    # x0*x2 vs x1^2: same degree; grevlex compares the last differing exponent
    a, b = (1, 0, 1, 0), (0, 2, 0, 0)
    assert GREVLEX.key(b) > GREVLEX.key(a)
    assert LEX.key(a) > LEX.key(b)


def test_block_order_elimination_property():
    ordk = Block(2)
    front = (1, 0, 0, 0)          # x0
    back = (0, 0, 3, 3)           # x2^3 x3^3
    assert ordk.key(front) > ordk.key(back)


def test_linear_substitution_binomial():
    f = poly("x0^2", nvars=2)
    m = [[1, 1], [0, 1]]  # x0 -> x0 + x1
    g = f.substitute_linear(m)
    assert g == poly("x0^2 + 2*x0*x1 + x1^2", nvars=2)


def test_substitution_identity_and_swap():
    f = poly("x0*x1", nvars=2)
    ident = [[1, 0], [0, 1]]
    swap = [[0, 1], [1, 0]]
    assert f.substitute_linear(ident) == f
    assert f.substitute_linear(swap) == f


def test_reduce_examples():
    # multiple of a generator
    assert reduce(poly("x0^2"), [poly("x0")], GREVLEX).is_zero()
    # irreducible input unchanged
    cubic = [poly("x0*x2 - x1^2"), poly("x0*x3 - x1*x2")]
    f = poly("x1*x3 - x2^2")
    assert reduce(f, cubic, GREVLEX) == f


def test_reduce_result_is_normal_form():
    G = [poly("x0*x2 - x1^2"), poly("x0*x3 - x1*x2"), poly("x1*x3 - x2^2")]
    f = poly("x0^2*x3^2")
    r = reduce(f, G, GREVLEX)
    lms = [g.leading_monomial(GREVLEX) for g in G]
    from qplab.orders import monomial_divides
    for m in r.terms:
        assert not any(monomial_divides(lm, m) for lm in lms)


small_expo = st.tuples(*[st.integers(0, 3)] * 3)


@settings(max_examples=60, deadline=None)
@given(small_expo, small_expo, small_expo)
def test_order_axioms(a, b, m):
    for order in (GREVLEX, LEX, Block(1)):
        ka, kb = order.key(a), order.key(b)
        # totality with multiplicativity
        if ka < kb:
            assert order.key(monomial_mul(m, a)) < order.key(monomial_mul(m, b))
        elif ka > kb:
            assert order.key(monomial_mul(m, a)) > order.key(monomial_mul(m, b))
        else:
            assert a == b
        # 1 divides everything and is minimal
        assert order.key((0, 0, 0)) <= ka or sum(a) == 0


@st.composite
def random_poly(draw):
    n_terms = draw(st.integers(1, 4))
    terms = {}
    for _ in range(n_terms):
        m = draw(small_expo)
        c = draw(st.integers(1, 32002))
        terms[m] = c
    return Polynomial(3, P, terms)


@settings(max_examples=40, deadline=None)
@given(random_poly(), st.lists(random_poly(), min_size=1, max_size=3))
def test_reduce_idempotent(f, gs):
    r1 = reduce(f, gs, GREVLEX)
    assert reduce(r1, gs, GREVLEX) == r1


@settings(max_examples=25, deadline=None)
@given(random_poly(), random_poly())
def test_substitution_composition(f, _g):
    # applying M2 then M1 composes to the product M2·M1 under the
    # x_i -> sum_j M[i][j]x_j convention
    m1 = [[1, 1, 0], [0, 1, 0], [2, 0, 1]]
    m2 = [[1, 0, 3], [1, 1, 0], [0, 0, 1]]
    composed = [[sum(m2[i][k] * m1[k][j] for k in range(3)) % 32003
                 for j in range(3)] for i in range(3)]
    a = f.substitute_linear(m2).substitute_linear(m1)
    b = f.substitute_linear(composed)
    assert a == b
