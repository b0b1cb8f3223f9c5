from math import factorial

import pytest

from mfhrr.errors import NonCommutativeAmbient, NonComposable
from mfhrr.hochschild import (Chain, ExteriorAlgebra, MatrixCategory, PolyAlgebra, b0,
                              exp_class, hochschild_b, kunneth_star, one_variable_model,
                              psi_mf, pushforward, shuffle_star, thm112_verify, trace_hh0)
from mfhrr.mfcat import koszul_mf, mf_new
from mfhrr.polycore import Poly, PolyMatrix

R = ("x", "y")
x, y = Poly.gens(R)


def XY():
    return mf_new(PolyMatrix(R, [[x]]), PolyMatrix(R, [[y]]), x * y)


def test_b_squared_on_small_chains():
    P = PolyAlgebra(x * y)
    c = Chain.from_elements(P, [P.element(x), P.element(y), P.element(x + y)])
    assert hochschild_b(hochschild_b(c)).is_zero()
    E = MatrixCategory.from_mfs({"X": XY()})
    d = E.delta_element("X")
    c = Chain.from_elements(E, [E.identity("X"), d, d])
    assert hochschild_b(hochschild_b(c)).is_zero()


def test_b_on_length_zero_is_the_hom_differential():
    E = MatrixCategory.from_mfs({"X": XY()})
    for a in [("X", "X", 0, 1, (1, 0)), ("X", "X", 0, 0, (0, 2))]:
        assert hochschild_b(Chain(E, {(a,): 1})) == Chain(E, {(k,): c for k, c in E.d(a).items()})


def test_non_composable_words_are_rejected():
    E = MatrixCategory.from_mfs({"X": XY(), "Y": XY()})
    with pytest.raises(NonComposable):
        Chain(E, {(("X", "Y", 0, 0, (0, 0)), ("X", "Y", 0, 0, (0, 0))): 1})


def test_shuffle_examples():
    lam = ExteriorAlgebra(1)
    e = Chain(lam, {((), (0,)): 1})
    assert shuffle_star(e, e) == Chain(lam, {((), (0,), (0,)): 2})
    P = PolyAlgebra(x * y)
    q = Chain.from_elements(P, [P.element(Poly.const(R, 1)), P.element(x)])
    assert shuffle_star(q, q).is_zero()
    a = Chain.from_elements(P, [P.element(x)])
    b = Chain.from_elements(P, [P.element(y)])
    assert shuffle_star(a, b) == Chain.from_elements(P, [P.element(x * y)])


def test_shuffle_needs_commutative_ambient():
    E = MatrixCategory.from_mfs({"X": XY()})
    c = Chain(E, {(a,): v for a, v in E.identity("X").items()})
    with pytest.raises(NonCommutativeAmbient):
        shuffle_star(c, c)


def test_kunneth_examples():
    P = PolyAlgebra(x * y)
    Q1 = ("u",)
    u = Poly.var(Q1, "u")
    Pu = PolyAlgebra(u)
    a = Chain.from_elements(P, [P.element(x)])
    b = Chain.from_elements(Pu, [Pu.element(u)])
    ((word, c),) = kunneth_star(a, b).items()
    assert len(word) == 1 and c == 1
    one = Poly.const(R, 1)
    lam = ExteriorAlgebra(1)
    s = Chain(lam, {((), (0,)): 1})
    t = Chain.from_elements(P, [P.element(one), P.element(x)])
    k = kunneth_star(s, t)
    assert len(list(k.items())) == 2 and all(len(w) == 3 for w, _ in k.items())


def test_exp_class_examples():
    E = MatrixCategory.from_mfs({"X": XY()})
    d = E.delta_element("X")
    one = E.identity("X")
    ex = exp_class(E, "X", d, L=2)
    expected = (Chain.from_elements(E, [one]) + Chain.from_elements(E, [one, d])
                + Chain.from_elements(E, [one, d, d]))
    assert ex == expected and ex.truncated_at == 2
    assert exp_class(E, "X", {}, L=3) == Chain.from_elements(E, [one])


def test_strict_pushforward_is_entrywise():
    M = one_variable_model()
    lam, inc, E = M["Lambda"], M["inclusion"], M["E"]
    y1 = Chain(lam, {((), (0,)): 1})
    assert pushforward(inc, y1, L=1) == Chain.from_elements(E, [E.identity("K"), {M["estar"]: 1}])


def test_psi_examples():
    E = MatrixCategory.from_mfs({"X": XY()})
    idX = Chain(E, {(a,): c for a, c in E.identity("X").items()})
    p = psi_mf(idX)
    D = p.category
    assert p == Chain(D, {(a,): c for a, c in D.identity(("D", "X")).items()})
    a0 = ("X", "X", 0, 0, (1, 0))
    a1 = ("X", "X", 1, 1, (0, 1))
    (word, c), = psi_mf(Chain(E, {(a0, a1): 1})).items()
    assert c == -1


def test_trace_examples():
    K = koszul_mf([x, y], [Poly.zero(R)] * 2)
    E = MatrixCategory.from_mfs({"K": K})
    assert trace_hh0(Chain(E, {(a,): c for a, c in E.identity("K").items()})) == 1
    assert trace_hh0(Chain(E, {})) == 0
    lam = ExteriorAlgebra(1)
    assert trace_hh0(Chain(lam, {((),): 1})) == 1
    assert trace_hh0(Chain(lam, {((), (0,)): 1})) == 0


def test_b0_is_shuffle_with_curvature():
    P = PolyAlgebra(x * y)
    h = Chain.from_elements(P, [P.element(Poly.const(R, 1)), P.element(-(x * y))])
    c = Chain.from_elements(P, [P.element(x), P.element(y * y)])
    assert b0(c) == shuffle_star(h, c)


def test_thm112_report():
    rep = thm112_verify(5)
    assert rep["str_e_estar"] == "-1"
    assert [c["res"] for c in rep["cases"]] == ["-1", "0", "0", "0", "0", "0"]
    assert [c["trace"] for c in rep["cases"]] == ["1", "0", "0", "0", "0", "0"]
    for c in rep["cases"]:
        j = c["j"]
        assert c["eps"] == f"({-factorial(j)}*alpha/x^{j + 1})*dx"
