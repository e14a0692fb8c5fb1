"""Buchberger engine, elimination, quotients, saturation, Hilbert data."""

import pytest

from qplab.errors import DomainError, EmptyVarietyError
from qplab.fields import GF32003, QQ
from qplab.groebner import (Ideal, buchberger, is_groebner,
                            monomials_of_degree, spolynomial)
from qplab.hilbert import binomial
from qplab.orders import GREVLEX, Block
from qplab.poly import Polynomial, reduce

P = GF32003

TWISTED_CUBIC = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]


def ideal(texts, nvars, field=P):
    return Ideal.from_texts(nvars, field, texts)


def cubic(field=P):
    return ideal(TWISTED_CUBIC, 4, field)


def test_principal_ideal_gb():
    I = ideal(["x0"], 3)
    for order in (GREVLEX, Block(1)):
        gb = I.groebner_basis(order)
        assert [g.to_text() for g in gb] == ["x0"]


def test_twisted_cubic_is_its_own_gb():
    I = cubic()
    gb = I.groebner_basis(GREVLEX)
    assert len(gb) == 3
    assert is_groebner(gb, GREVLEX)
    # the generators themselves are already a reduced basis (up to scaling)
    assert ({g.to_text() for g in gb}
            == {g.monic(GREVLEX).to_text() for g in I.gens})


def test_gb_idempotent():
    I = cubic()
    gb = I.groebner_basis(GREVLEX)
    again = buchberger(gb, GREVLEX)
    assert [g.to_text() for g in again] == [g.to_text() for g in gb]


def test_gb_over_rationals_matches_prime_field_lms():
    lms_q = [g.leading_monomial(GREVLEX)
             for g in cubic(QQ).groebner_basis(GREVLEX)]
    lms_p = [g.leading_monomial(GREVLEX)
             for g in cubic().groebner_basis(GREVLEX)]
    assert lms_q == lms_p


def test_membership_by_reduction():
    I = cubic()
    f = Polynomial.parse("x0*x1*x3 - x0*x2^2", 4, P)  # x0*(x1x3 - x2^2)
    assert I.contains(f)
    assert not I.contains(Polynomial.parse("x0*x3", 4, P))


def test_elimination_twisted_cubic_point_projection():
    # projecting the twisted cubic from a point of itself gives a conic
    I = cubic()
    E = I.elimination_ideal(1)
    assert E.nvars == 3
    gb = E.groebner_basis(GREVLEX)
    assert len(gb) == 1
    conic = Polynomial.parse("x0*x2 - x1^2", 3, P).monic(GREVLEX)
    assert gb[0] == conic  # conic in the back variables


def test_elimination_members_reduce_to_zero():
    I = ideal(["x0*x3 - x1*x2", "x1*x3 - x2^2"], 4)
    E = I.elimination_ideal(1)
    block_gb = I.groebner_basis(Block(1))
    for g in E.gens:
        lifted = g.extend_ring(4, 1)
        assert reduce(lifted, block_gb, Block(1)).is_zero()


def test_elimination_of_linear_graph():
    I = ideal(["x0 - x1"], 2)
    E = I.elimination_ideal(1)
    assert E.is_zero()


def test_elimination_domain_error():
    with pytest.raises(DomainError):
        cubic().elimination_ideal(9)


def test_quotient_principal_cases():
    I = ideal(["x0^2"], 2)
    x0 = Polynomial.parse("x0", 2, P)
    Q = I.quotient(x0)
    assert [g.to_text() for g in Q.groebner_basis()] == ["x0"]

    J = ideal(["x0*x1"], 2)
    Q2 = J.quotient(x0)
    assert [g.to_text() for g in Q2.groebner_basis()] == ["x1"]


def test_quotient_law_and_zero_error():
    I = ideal(["x0*x1", "x0*x2"], 3)
    x0 = Polynomial.parse("x0", 3, P)
    Q = I.quotient(x0)
    # I ⊆ I:(f) and (I:(f))·f ⊆ I
    for g in I.gens:
        assert Q.contains(g)
    for g in Q.gens:
        assert I.contains(g * x0)
    with pytest.raises(DomainError):
        I.quotient(Polynomial.zero(3, P))


def test_saturation():
    I = ideal(["x0*x1", "x0*x2"], 3)
    x0 = Polynomial.parse("x0", 3, P)
    S = I.saturate(x0)
    assert {g.to_text() for g in S.groebner_basis()} == {"x1", "x2"}
    # saturation is stable under further quotient
    assert S.quotient(x0).equals(S)

    # f in the radical saturates to the unit ideal
    J = ideal(["x0^2", "x0*x1"], 2)
    S2 = J.saturate(Polynomial.parse("x0", 2, P))
    assert any(g.degree() == 0 for g in S2.groebner_basis())

    # prime ideal is already saturated with respect to anything outside it
    C = cubic()
    f = Polynomial.parse("x0", 4, P)
    assert C.saturate(f).equals(C)


def test_hilbert_twisted_cubic():
    h = cubic().hilbert()
    assert [h.hf_value(t) for t in range(4)] == [1, 4, 7, 10]
    assert (h.n, h.degree) == (1, 3)
    n, d, c = cubic().dim_deg_codim()
    assert (n, d, c) == (1, 3, 2)


def test_hilbert_zero_ideal():
    I = Ideal(4, P, [])
    assert I.dim_graded_piece(2) == 0
    # HF of the full ring
    h = ideal(["x0*x1 - x0*x1"], 4)  # zero polynomial is dropped
    assert h.is_zero()


def test_hilbert_unit_ideal_error():
    I = ideal(["x0", "x1"], 2)
    # zero set is empty projectively
    with pytest.raises(EmptyVarietyError):
        I.hilbert()


def test_quadric_hypersurface_dims():
    I = ideal(["x0*x1 - x2^2"], 5)
    assert I.dim_deg_codim() == (3, 2, 1)


def test_graded_piece_basis_and_consistency():
    I = cubic()
    assert len(I.graded_piece_basis(2)) == 3
    h = I.hilbert()
    for t in range(5):
        assert I.dim_graded_piece(t) + h.hf_value(t) == binomial(3 + t, t)


def test_graded_piece_domain_error():
    with pytest.raises(DomainError):
        cubic().graded_piece_basis(-1)


def test_monomials_of_degree():
    ms = monomials_of_degree(3, 2)
    assert len(ms) == 6
    assert ms[0] == (2, 0, 0)  # grevlex-largest first


def test_spolynomial_reduces_in_gb():
    gb = cubic().groebner_basis(GREVLEX)
    s = spolynomial(gb[0], gb[1], GREVLEX)
    assert reduce(s, gb, GREVLEX).is_zero()


def test_cache_key_properties():
    I1 = cubic()
    I2 = ideal(list(reversed(TWISTED_CUBIC)), 4)
    assert I1.key_digest() == I2.key_digest()
    I3 = cubic(QQ)
    assert I1.key_digest() != I3.key_digest()
    assert I1.key_digest(Block(1)) != I1.key_digest(GREVLEX)
