from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from mfhrr.errors import NotIsolated, NotZeroDimensional
from mfhrr.forms import MilnorClass
from mfhrr.polycore import Poly
from mfhrr.residue import (GeneralizedFraction, cech_1var_reduce, kunneth_residue_check,
                           res_general, res_monomial, residue_pairing)

R = ("x", "y")
x, y = Poly.gens(R)
X1 = ("x",)
t = Poly.var(X1, "x")


def one(ring):
    return Poly.const(ring, 1)


def test_res_monomial_examples():
    assert res_monomial(one(X1), (1,)) == 1
    assert res_monomial(one(X1), (2,)) == 0
    assert res_monomial(t, (2,)) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_normalization(n):
    ring = tuple(f"x{i}" for i in range(n))
    assert res_monomial(one(ring), (1,) * n) == 1
    assert res_general(one(ring), list(Poly.gens(ring))) == 1
    for a in product([1, 2, 3], repeat=n):
        if any(k > 1 for k in a):
            assert res_monomial(one(ring), a) == 0


def test_res_general_examples():
    assert res_general(one(R), [x, y]) == 1
    assert res_general(one(R), [y, x]) == -1
    assert res_general(x * y, [3 * x * x, 3 * y * y]) == Fraction(1, 9)


def test_res_general_non_monomial_system():
    # x^2 + y^3, xy has only the origin as common zero; compare two orders of the
    # same transformation law
    dens = [x * x + y ** 3, x * y]
    g = y ** 3 + x
    assert res_general(g, dens) == res_general(g, dens, extra_power=2)


def test_non_isolated_system():
    with pytest.raises(NotZeroDimensional):
        res_general(one(R), [x, x * y])


def test_pairing_examples():
    assert residue_pairing(x * y, one(R), one(R)) == -1
    assert residue_pairing(x * x + y * y, one(R), one(R)) == Fraction(1, 4)
    f = x ** 3 + y ** 3
    ch = 3 * y - 3 * x
    assert residue_pairing(f, ch, ch) == -2
    assert residue_pairing(f, MilnorClass(f, ch), MilnorClass(f, ch)) == -2
    with pytest.raises(NotIsolated):
        residue_pairing(x * x, one(R), one(R))


def test_kunneth_examples():
    Y1 = ("y",)
    s = Poly.var(Y1, "y")
    a = GeneralizedFraction(one(X1), ((t, 1),))
    b = GeneralizedFraction(one(Y1), ((s, 1),))
    assert kunneth_residue_check(a, b) == (-1, -1)
    c = GeneralizedFraction(t, ((t, 2),))
    assert kunneth_residue_check(c, b) == (-1, -1)
    empty = GeneralizedFraction(Poly.const((), 3), ())
    assert kunneth_residue_check(empty, b) == (3, 3)


def test_cech_examples():
    assert cech_1var_reduce({-1: 1}).singular == {1: 1}
    assert cech_1var_reduce({1: 1, -2: 1}).singular == {2: 1}
    c = cech_1var_reduce({-1: 3, -3: 2})
    assert c.singular == {1: 3, 3: 2}
    assert c.residue() == 3


@given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 4), st.integers(1, 4))
def test_monomial_residue_against_general(i, j, a, b):
    g = x ** i * y ** j
    assert res_general(g, [x ** a, y ** b]) == res_monomial(g, (a, b))


@given(st.integers(-3, 3).filter(bool), st.integers(-3, 3), st.integers(0, 3))
def test_residue_invariant_under_triangular_change(c, e, k):
    # (x, y) -> (c x + e y^2, y): the Jacobian determinant is c
    g = x ** k
    assert res_general(g * c, [c * x + e * y * y, y]) == res_general(g, [x, y])
