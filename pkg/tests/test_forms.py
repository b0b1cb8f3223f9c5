import pytest
from hypothesis import given

from mfhrr.errors import OddDimension
from mfhrr.forms import (DiffForm, FormMatrix, chern, de_rham, hkr_epsilon,
                         milnor_basis, milnor_reduce, supertrace, wedge)
from mfhrr.hochschild import Chain, MatrixCategory, PolyAlgebra
from mfhrr.mfcat import koszul_mf, mf_new
from mfhrr.polycore import Poly, PolyMatrix, parse_poly

from strategies import RING, forms, polys

R = RING
x, y = Poly.gens(R)
dx, dy = DiffForm.dx(R, 0), DiffForm.dx(R, 1)
dxdy = wedge(dx, dy)


def test_wedge_examples():
    assert dxdy.comps == {(0, 1): Poly.const(R, 1)}
    assert wedge(dx, dx).is_zero()
    assert wedge(dy, dx) == -dxdy


def test_de_rham_examples():
    assert de_rham(DiffForm.function(x * y)) == dx * y + dy * x
    assert de_rham(dx).is_zero()
    assert de_rham(wedge(DiffForm.function(x), dy)) == dxdy


def test_supertrace_examples():
    one = FormMatrix.identity(R, (0, 1))
    assert supertrace(one).is_zero()


def test_chern_xy():
    X = mf_new(PolyMatrix(R, [[x]]), PolyMatrix(R, [[y]]), x * y)
    ch = chern(X)
    assert ch.rep == Poly.const(R, 1)


def test_chern_fermat():
    f = parse_poly("x^3+y^3", R)
    X = mf_new(PolyMatrix(R, [[x + y]]), PolyMatrix(R, [[x * x - x * y + y * y]]), f)
    assert chern(X).rep == 3 * y - 3 * x


def test_chern_needs_even_dimension():
    X1 = ("x",)
    (t,) = Poly.gens(X1)
    with pytest.raises(OddDimension):
        chern(koszul_mf([t], [t]))


def test_milnor_reduce_examples():
    f = parse_poly("x^3+y^3", R)
    assert milnor_reduce(dxdy * (x * x), f).rep == Poly.zero(R)
    assert milnor_reduce(dxdy * (x * y), f).rep == x * y
    assert sorted(m.render() for m in milnor_basis(f)) == ["1", "x", "x*y", "y"]


def test_milnor_reduce_smooth_potential():
    assert milnor_reduce(dxdy * (x * y + 1), x).rep == Poly.zero(R)


def test_hkr_on_functions():
    P = PolyAlgebra(x * y)
    q0, q1 = x + 1, y * y
    c = Chain.from_elements(P, [P.element(q0), P.element(q1)])
    assert hkr_epsilon(c) == wedge(DiffForm.function(q0), de_rham(DiffForm.function(q1)))
    assert hkr_epsilon(Chain.from_elements(P, [P.element(q0)])) == DiffForm.function(q0)


def test_hkr_of_identity_is_signed_chern():
    # forms are moved past morphisms with the Koszul sign, which makes
    # eps(id_X[]) = (-1)^{n/2} ch(X)
    X = mf_new(PolyMatrix(R, [[x]]), PolyMatrix(R, [[y]]), x * y)
    E = MatrixCategory.from_mfs({"X": X})
    eps = hkr_epsilon(Chain(E, {(a,): c for a, c in E.identity("X").items()}))
    assert milnor_reduce(eps, X.f).rep == -chern(X).rep


@given(forms(), forms())
def test_wedge_graded_commutative(a, b):
    for i in a.degrees():
        for j in b.degrees():
            sign = -1 if (i * j) % 2 else 1
            assert wedge(a.part(i), b.part(j)) == wedge(b.part(j), a.part(i)) * sign


@given(forms())
def test_d_squared(w):
    assert de_rham(de_rham(w)).is_zero()


@given(polys())
def test_milnor_reduce_idempotent(p):
    f = parse_poly("x^3+y^3", R)
    c = milnor_reduce(dxdy * p, f)
    assert milnor_reduce(dxdy * c.rep, f) == c
