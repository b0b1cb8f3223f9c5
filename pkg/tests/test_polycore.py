from fractions import Fraction

import pytest
from hypothesis import given

from mfhrr.errors import DimensionMismatch, PolySyntaxError, UnknownVariable
from mfhrr.polycore import Poly, PolyMatrix, det, parse_poly

from strategies import RING, polys

R = RING
x, y = Poly.gens(R)


def P(s):
    return parse_poly(s, R)


def test_parse_simple():
    assert P("x*y") == x * y
    assert P("x^3+y^3") == x ** 3 + y ** 3
    assert P("-(x - 2*y)^2") == -(x * x - 4 * x * y + 4 * y * y)


def test_parse_unknown_variable():
    with pytest.raises(UnknownVariable) as info:
        P("x+z")
    assert info.value.name == "z"


@pytest.mark.parametrize("text,pos", [("x+", 2), ("x**y", 2), ("(x", 2), ("x^y", 2),
                                      ("", 0), ("3x", 1), ("x $ y", 2), ("1/0", 2)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(PolySyntaxError) as info:
        P(text)
    assert info.value.position == pos


def test_division_only_between_integers():
    with pytest.raises(PolySyntaxError):
        P("x/3")


def test_rational_literals():
    assert P("1/3*x") == x * Fraction(1, 3)
    assert P("-2/4") == Poly.const(R, Fraction(-1, 2))


def test_ring_ops_examples():
    assert (x + y) * (x - y) == x * x - y * y
    assert x * 1 == x
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y


def test_derivatives():
    assert (x * y).diff(0) == y
    assert P("x^3+y^3").diff(0) == 3 * x * x
    assert Poly.const(R, 5).diff(1) == Poly.zero(R)


def test_render_is_canonical():
    assert P("y^2 + 1 + x^2 + 2*x*y - 3*x*y^3").render() == "-3*x*y^3 + x^2 + 2*x*y + y^2 + 1"
    assert (x * Fraction(1, 3)).render() == "1/3*x"
    assert Poly.zero(R).render() == "0"


def test_matrix_ops():
    X = PolyMatrix(R, [[x]])
    Y = PolyMatrix(R, [[y]])
    assert (X * Y).entries[0][0] == x * y
    assert X * Y == Y * X
    assert PolyMatrix.identity(R, 2).trace() == Poly.const(R, 2)
    with pytest.raises(DimensionMismatch):
        PolyMatrix.identity(R, 2) * PolyMatrix.identity(R, 3)


def test_det():
    M = PolyMatrix(R, [[x, y], [1, x]])
    assert det(M) == x * x - y


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Poly.zero(R)


@given(polys())
def test_parse_render_roundtrip(p):
    assert parse_poly(p.render(), R) == p


@given(polys(), polys())
def test_leibniz_rule(a, b):
    for i in range(2):
        assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)
