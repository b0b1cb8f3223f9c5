import json

import pytest

from mfhrr.errors import NotAFactorization, PotentialMismatch
from mfhrr.homology import euler_chi, theta, z2_homology_dims
from mfhrr.mfcat import (MatrixFactorization, direct_sum, dual, hom_complex, koszul_mf,
                         mf_from_strings, mf_new, n_twist, shift, tensor, zero_object)
from mfhrr.polycore import Poly, PolyMatrix, parse_poly

R = ("x", "y")
x, y = Poly.gens(R)
F = x * y


def M(rows):
    return PolyMatrix(R, rows)


def XY():
    return mf_new(M([[x]]), M([[y]]), F)


def test_mf_new_examples():
    XY().validate()
    with pytest.raises(NotAFactorization):
        mf_new(M([[x]]), M([[x]]), F)
    z = Poly.zero(R)
    mf_new(M([[z, x], [y, z]]), M([[z, x], [y, z]]), F).validate()


def test_koszul_one_variable():
    X1 = ("x",)
    (t,) = Poly.gens(X1)
    K = koszul_mf([t], [t * t])
    assert K.A == PolyMatrix(X1, [[t]]) and K.B == PolyMatrix(X1, [[t * t]])
    K0 = koszul_mf([t], [Poly.zero(X1)])
    assert K0.f == Poly.zero(X1) and K0.B == PolyMatrix(X1, [[Poly.zero(X1)]])


def test_koszul_two_variables_layout():
    ring = ("x1", "x2", "y1", "y2")
    x1, x2, y1, y2 = Poly.gens(ring)
    K = koszul_mf([x1, x2], [y1, y2])
    # columns are images of basis vectors: e1 -> x1*1 - y2*e1e2
    assert K.A == PolyMatrix(ring, [[x1, x2], [-y2, y1]])
    assert K.B == PolyMatrix(ring, [[y1, -x2], [y2, x1]])
    assert list(K.parities) == [0, 0, 1, 1]
    # the transposed layout is an equally valid factorization of the same f
    Kt = mf_new(K.A.transpose(), K.B.transpose(), K.f)
    assert z2_homology_dims(hom_complex(Kt, Kt)) == z2_homology_dims(hom_complex(K, K))


def test_dual_and_twist_examples():
    X = XY()
    D = dual(X)
    assert (D.A, D.B, D.f) == (M([[y]]), M([[-x]]), -F)
    DD = dual(D)
    assert (DD.A, DD.B) == (M([[-x]]), M([[-y]]))
    N = n_twist(X)
    assert (N.A, N.B, N.f) == (M([[x]]), M([[-y]]), -F)
    assert n_twist(N) == X
    Z = mf_from_strings(R, F, [["y"]], [["x"]])
    assert euler_chi(DD, Z) == euler_chi(X, Z)


def test_zero_object_behaviour():
    Z = zero_object(R, F)
    X = XY()
    assert tensor(X, zero_object(R, Poly.zero(R))).is_zero_object()
    assert dual(Z).is_zero_object()
    assert hom_complex(X, Z).is_zero_object()
    assert tuple(z2_homology_dims(hom_complex(X, Z))) == (0, 0)
    assert theta(zero_object(R, F), n_twist(X)) == 0


def test_tensor_matches_koszul_up_to_basis():
    ring = ("x", "y", "u", "v")
    x_, y_, u, v = Poly.gens(ring)
    X = mf_new(PolyMatrix(ring, [[x_]]), PolyMatrix(ring, [[y_]]), x_ * y_)
    U = mf_new(PolyMatrix(ring, [[u]]), PolyMatrix(ring, [[v]]), u * v)
    T = tensor(X, U)
    K = koszul_mf([x_, u], [y_, v])
    T.validate()
    K.validate()
    assert T.f == K.f
    for W in (K, shift(K), n_twist(K), n_twist(shift(T))):
        Wd = W if W.f == -K.f else n_twist(W)
        assert theta(T, Wd) == theta(K, Wd)


def test_hom_complex_xy():
    C = hom_complex(XY(), XY())
    assert (C.p0, C.p1) == (2, 2)
    assert tuple(z2_homology_dims(C)) == (1, 0)


def test_shift_and_sum():
    X = XY()
    assert euler_chi(X, shift(X)) == -1
    S = direct_sum(X, shift(X))
    assert euler_chi(X, S) == 0
    with pytest.raises(PotentialMismatch):
        direct_sum(X, dual(X))


def test_json_roundtrip():
    X = mf_from_strings(R, parse_poly("x^3+y^3", R), [["x+y"]], [["x^2-x*y+y^2"]])
    data = json.loads(json.dumps(X.to_json()))
    assert MatrixFactorization.from_json(data) == X
