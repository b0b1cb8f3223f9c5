"""Acceptance criteria, one PASS/FAIL line each (run with -s or -v to see them)."""

import os
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from mfhrr.checks import rand_fraction, run_suites
from mfhrr.corpus import build_corpus, corpus_report, hrr_case
from mfhrr.forms import chern, hkr_epsilon, milnor_reduce
from mfhrr.hochschild import Chain, MatrixCategory, thm112_verify
from mfhrr.polycore import Poly
from mfhrr.residue import kunneth_residue_check, res_general, res_monomial


def _emit(capsys, n, title, ok, detail=""):
    with capsys.disabled():
        print(f"\nCRITERION {n} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else ""))


def criterion(n, title):
    def wrap(fn):
        def test(capsys):
            start = time.perf_counter()
            try:
                detail = fn()
            except Exception as exc:
                _emit(capsys, n, title, False, f"{type(exc).__name__}: {exc}")
                raise
            _emit(capsys, n, title, True, f"{detail}; {time.perf_counter() - start:.2f}s")
        test.__name__ = fn.__name__
        test.__doc__ = fn.__doc__
        return test
    return wrap


def _entry(name):
    return next(e for e in build_corpus() if e.name == name)


@criterion(1, "residue normalization for n <= 4")
def test_c1_residue_normalization():
    start = time.perf_counter()
    checked = 0
    for n in range(1, 5):
        ring = tuple(f"x{i}" for i in range(n))
        one = Poly.const(ring, 1)
        assert res_general(one, list(Poly.gens(ring))) == 1
        for a in product([1, 2, 3], repeat=n):
            expected = 1 if all(k == 1 for k in a) else 0
            assert res_monomial(one, a) == expected
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 1, elapsed
    return f"{checked} exponent vectors"


@criterion(2, "one-variable trace = -residue for j = 0..5")
def test_c2_thm112():
    start = time.perf_counter()
    rep = thm112_verify(5)
    assert rep["str_e_estar"] == "-1"
    for c in rep["cases"]:
        j = c["j"]
        fact = 1
        for k in range(2, j + 1):
            fact *= k
        assert c["eps"] == f"({-fact}*alpha/x^{j + 1})*dx"
        assert c["trace"] == ("1" if j == 0 else "0")
        assert Fraction(c["res"]) == -Fraction(c["trace"])
    assert time.perf_counter() - start < 5
    return "str(e e*) = -1"


@criterion(3, "HRR for f = xy, X = (x, y)")
def test_c3_xy():
    start = time.perf_counter()
    X = _entry("xy").mfs["(x,y)"]
    rep = hrr_case(X, X)
    assert rep["chi"] == 1 and rep["pairing"] == "-1" and rep["sign"] == -1
    assert rep["verdict"] == "holds"
    assert time.perf_counter() - start < 2
    return "chi = 1 = (-1)(-1)"


@criterion(4, "HRR for the Fermat cubic, X = (x+y, x^2-xy+y^2)")
def test_c4_fermat():
    start = time.perf_counter()
    X = _entry("fermat3").mfs["(x+y,q)"]
    rep = hrr_case(X, X)
    assert rep["ch_X"] == "(-3*x + 3*y)*dx∧dy"
    assert rep["pairing"] == "-2" and rep["sign"] == -1
    assert rep["chi"] == 2 and rep["verdict"] == "holds"
    assert time.perf_counter() - start < 60
    return "chi = 2, <ch, ch> = -2"


@criterion(5, "HRR for x1 y1 + x2 y2 with the Koszul factorization")
def test_c5_koszul4():
    start = time.perf_counter()
    X = _entry("koszul4").mfs["koszul"]
    rep = hrr_case(X, X)
    assert rep["verdict"] == "holds"
    assert time.perf_counter() - start < 300
    return f"chi = {rep['chi']}, signed pairing = {rep['rhs']}"


@criterion(6, "Kunneth residue sign on 20 random pairs, m, n <= 2")
def test_c6_kunneth():
    rng = random.Random("kunneth-acceptance")
    for _ in range(20):
        m, n = rng.randint(1, 2), rng.randint(1, 2)
        left = rand_fraction(rng, ("x", "y")[:m])
        right = rand_fraction(rng, ("u", "v")[:n])
        lhs, rhs = kunneth_residue_check(left, right)
        assert lhs == rhs, (lhs, rhs)
    return "20 pairs"


@criterion(7, "Hochschild property suites")
def test_c7_hochschild():
    b_sq = ["b_squared_poly", "b_squared_mf", "b_squared_curved"]
    counts, failure = run_suites(7, 4, 70, b_sq)
    assert failure is None, failure
    assert sum(counts.values()) >= 200
    others = ["eps_chain_map", "kunneth_chain_map", "psi_chain_map", "b0_central",
              "lambda_powers", "shuffle_algebra"]
    more, failure = run_suites(7, 4, 20, others)
    assert failure is None, failure
    assert set(more) == set(others)
    return f"{sum(counts.values())} chains for b^2, {sum(more.values())} further cases"


@criterion(8, "oracle agrees with Groebner homology on every corpus Hom and tensor complex")
def test_c8_oracle():
    threads = int(os.environ.get("MFHRR_THREADS", "4"))
    rep = corpus_report(oracle=True, threads=threads)
    assert rep["summary"]["total"] > 0
    assert all(c["oracle"]["agrees"] for c in rep["cases"])
    return f"{2 * rep['summary']['total']} complexes"


def _eps_and_chern(X):
    E = MatrixCategory.from_mfs({"X": X})
    eps = hkr_epsilon(Chain(E, {(a,): c for a, c in E.identity("X").items()}))
    return milnor_reduce(eps, X.f), chern(X)


def _corpus_mfs():
    for e in build_corpus():
        for name, X in e.mfs.items():
            yield f"{e.name}:{name}", X


# With forms moved past morphisms by the Koszul rule (the convention that makes
# the one-variable criterion come out as stated), eps(id_X[]) equals
# (-1)^{n/2} ch(X).  Equality therefore fails for the n = 2 entries with
# nonzero ch and holds for n = 4.  Kept as a strict xfail so the line prints FAIL.
@pytest.mark.xfail(strict=True, reason="eps(id_X[]) = (-1)^{n/2} ch(X); differs for n = 2")
@criterion(9, "eps(id_X[]) equals ch(X) on every corpus factorization")
def test_c9_eps_equals_chern():
    bad = [name for name, X in _corpus_mfs() if _eps_and_chern(X)[0] != _eps_and_chern(X)[1]]
    assert not bad, f"differs on {len(bad)} factorizations: {', '.join(bad)}"
    return "all agree"


def test_eps_is_signed_chern_on_corpus():
    for name, X in _corpus_mfs():
        eps, ch = _eps_and_chern(X)
        sign = -1 if (X.nvars // 2) % 2 else 1
        assert eps == ch.scale(sign), name
