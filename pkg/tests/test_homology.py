import pytest

from mfhrr.corpus import build_corpus
from mfhrr.homology import (euler_chi, homology_supertrace, stabilized_oracle, theta,
                            truncated_oracle, z2_homology_dims)
from mfhrr.mfcat import dual, hom_complex, koszul_mf, mf_new, n_twist, shift, tensor, zero_object
from mfhrr.polycore import Poly, PolyMatrix

R = ("x", "y")
x, y = Poly.gens(R)


def XY():
    return mf_new(PolyMatrix(R, [[x]]), PolyMatrix(R, [[y]]), x * y)


def koszul_complex():
    return koszul_mf([x, y], [Poly.zero(R)] * 2)


def test_koszul_resolves_residue_field():
    assert tuple(z2_homology_dims(koszul_complex())) == (1, 0)
    assert tuple(truncated_oracle(koszul_complex(), 6)) == (1, 0)


def test_xy_examples():
    X = XY()
    assert tuple(z2_homology_dims(hom_complex(X, X))) == (1, 0)
    assert euler_chi(X, X) == 1
    assert euler_chi(X, shift(X)) == -1
    assert euler_chi(X, zero_object(R, x * y)) == 0
    assert theta(X, dual(X)) == 1
    C = hom_complex(X, X)
    assert truncated_oracle(C, 8) == truncated_oracle(C, 16) == z2_homology_dims(C)
    assert tuple(stabilized_oracle(C)[0]) == (1, 0)


def test_theta_against_twist_carries_a_sign():
    # theta(X, N Y) = (-1)^{n/2} chi(X, Y); for n = 2 this is -1 on X = (x, y)
    assert theta(XY(), n_twist(XY())) == -1


@pytest.mark.parametrize("entry", build_corpus(), ids=lambda e: e.name)
def test_theta_twist_relation_on_corpus(entry):
    sign = -1 if (len(entry.ring) // 2) % 2 else 1
    for X in entry.mfs.values():
        for Y in entry.mfs.values():
            assert theta(X, n_twist(Y)) == sign * euler_chi(X, Y)


def test_zero_complex():
    Z = zero_object(R, Poly.zero(R))
    assert tuple(z2_homology_dims(Z)) == (0, 0)
    assert tuple(truncated_oracle(Z, 5)) == (0, 0)


def test_supertrace_of_identity_is_euler_characteristic():
    K = koszul_complex()
    assert homology_supertrace(K, PolyMatrix.identity(R, 4)) == 1
    X = XY()
    C = hom_complex(X, X)
    assert homology_supertrace(C, PolyMatrix.identity(R, 4)) == 1


def test_fermat_cubic_chi():
    f = x ** 3 + y ** 3
    X = mf_new(PolyMatrix(R, [[x + y]]), PolyMatrix(R, [[x * x - x * y + y * y]]), f)
    assert tuple(z2_homology_dims(hom_complex(X, X))) == (2, 0)
    T = tensor(X, n_twist(X))
    assert z2_homology_dims(T) == stabilized_oracle(T)[0]
