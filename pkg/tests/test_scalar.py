from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from almost_affine.scalar import (
    DivisionByZero,
    MixedFields,
    Quadratic,
    arith,
    format_scalar,
    parse_scalar,
    quadratic_roots,
    sign,
    tidy,
)
from oracles import from_engine, qadd, qinv, qmul, qneg, qnorm, qsign, to_engine

SQUAREFREE = [2, 3, 5, 6, 7, 10, 11, 13, 21, 29, 30]

A82 = Quadratic(Fraction(-11, 10), Fraction(1, 10), 21)  # (sqrt21 - 11)/10
A86 = Quadratic(Fraction(-3, 2), Fraction(1, 2), 5)  # (sqrt5 - 3)/2


def test_rational_add():
    assert arith("add", Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_quadratic_constraint_vanishes():
    assert 5 * A82 * A82 + 11 * A82 + 5 == 0


def test_inverse_of_root():
    assert arith("mul", A86, arith("div", 1, A86)) == 1
    assert A86 * A86 + 3 * A86 + 1 == 0


def test_signs():
    assert sign(Fraction(-3, 7)) == -1
    assert sign(A82) == -1
    assert sign(2 + A82) == 1
    assert sign(0) == 0


def test_mixed_fields_rejected():
    with pytest.raises(MixedFields):
        Quadratic(0, 1, 2) + Quadratic(0, 1, 3)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        arith("div", 1, 0)
    with pytest.raises(ZeroDivisionError):
        Quadratic(1, 1, 2) / 0


def test_invalid_quadratics():
    with pytest.raises(ValueError):
        Quadratic(1, 0, 2)
    with pytest.raises(ValueError):
        Quadratic(1, 1, 8)


def test_make_reduces():
    assert Quadratic.make(1, 1, 4) == 3
    assert Quadratic.make(0, 1, 8) == Quadratic(0, 2, 2)
    assert isinstance(Quadratic.make(Fraction(1, 2), 0, 5), Fraction)


def test_tidy_integral_fraction():
    x = tidy(Fraction(4, 2))
    assert x == 2 and type(x) is int


def test_text_encoding():
    assert parse_scalar("3/6") == Fraction(1, 2)
    assert parse_scalar("-4") == -4
    assert parse_scalar("(-11 + 1*sqrt(21))/10") == A82
    assert format_scalar(Fraction(-5, 3)) == "-5/3"
    with pytest.raises(ValueError):
        parse_scalar("sqrt(2)+")


def test_quadratic_roots():
    r1, r2 = quadratic_roots(5, 11, 5)
    assert {r1, r2} == {A82, A82.conjugate()}
    assert quadratic_roots(1, -3, 2) in ((1, 2), (2, 1))


# properties against the big-integer oracle ---------------------------------

def oracle_elements(d):
    small = st.integers(-10**6, 10**6)
    return st.tuples(small, small, st.integers(1, 10**4)).map(lambda t: qnorm(*t))


@st.composite
def field_triples(draw):
    d = draw(st.sampled_from(SQUAREFREE))
    xs = [draw(oracle_elements(d)) for _ in range(3)]
    return d, xs


@settings(max_examples=1500)
@given(field_triples())
def test_field_axioms_against_oracle(case):
    d, (x, y, z) = case
    X, Y, Z = (to_engine(v, d) for v in (x, y, z))
    assert from_engine(X + Y, d) == qadd(x, y)
    assert from_engine(X * Y, d) == qmul(x, y, d)
    assert from_engine(X - Y, d) == qadd(x, qneg(y))
    assert (X + Y) + Z == X + (Y + Z)
    assert (X * Y) * Z == X * (Y * Z)
    assert X * (Y + Z) == X * Y + X * Z
    assert X + Y == Y + X and X * Y == Y * X
    assert X + 0 == X and X * 1 == X
    assert X + (-X) == 0
    if x[0] or x[1]:
        inv = arith("div", 1, X)
        assert from_engine(inv, d) == qinv(x, d)
        assert arith("mul", X, inv) == 1
    if y[0] or y[1]:
        assert from_engine(arith("div", X, Y), d) == qmul(x, qinv(y, d), d)


@settings(max_examples=1500)
@given(field_triples())
def test_sign_against_oracle(case):
    d, (x, y, _) = case
    X, Y = to_engine(x, d), to_engine(y, d)
    assert sign(X) == qsign(x, d)
    assert sign(X * Y) == sign(X) * sign(Y)
    assert (sign(X) == 0) == (X == 0)
    assert (X < Y) == (qsign(qadd(x, qneg(y)), d) < 0)


@settings(max_examples=1000)
@given(field_triples())
def test_text_round_trip(case):
    d, (x, _, _) = case
    X = to_engine(x, d)
    assert parse_scalar(format_scalar(X)) == X


@settings(max_examples=1000)
@given(st.fractions(max_denominator=1000), st.sampled_from(SQUAREFREE))
def test_zero_irrational_part_is_rational(a, d):
    x = Quadratic.make(a, 0, d)
    assert not isinstance(x, Quadratic)
    assert x == a
