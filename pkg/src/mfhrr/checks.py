"""Randomized property checks shared by the test suite and ``mfhrr selftest``.

Every check takes a ``random.Random`` and a maximal word length and raises
AssertionError on failure.  ``run_suites`` drives them deterministically from
a seed.
"""

import random
from fractions import Fraction

from . import hochschild as hh
from .forms import (DiffForm, FormMatrix, d_poly, de_rham, hkr_epsilon, supertrace, wedge)
from .groebner import buchberger, syzygies
from .mfcat import (direct_sum, dual, koszul_mf, mf_from_strings, n_twist, shift, tensor)
from .polycore import Poly, PolyMatrix, parse_poly
from .residue import GeneralizedFraction, kunneth_residue_check, res_general, res_monomial

RING = ("x", "y")


# generators -----------------------------------------------------------------------------


def rand_coeff(rng, size=3):
    c = 0
    while c == 0:
        c = rng.randint(-size, size)
    return Fraction(c, rng.choice([1, 1, 1, 2, 3]))


def rand_exp(rng, n, deg=2):
    exp = [0] * n
    for _ in range(rng.randint(0, deg)):
        exp[rng.randrange(n)] += 1
    return tuple(exp)


def rand_poly(rng, ring=RING, terms=3, deg=3):
    n = len(ring)
    return Poly(ring, {rand_exp(rng, n, deg): rand_coeff(rng) for _ in range(rng.randint(0, terms))})


def rand_form(rng, ring=RING, deg=None):
    n = len(ring)
    comps = {}
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(0, n) if deg is None else deg
        S = tuple(sorted(rng.sample(range(n), k)))
        comps[S] = rand_poly(rng, ring, 2, 2)
    return DiffForm(ring, comps)


def rand_form_matrix(rng, row_par, col_par, ring=RING, homogeneous=None):
    """Matrix of forms; with ``homogeneous`` = total parity, entries respect it."""
    entries = []
    for a in row_par:
        row = []
        for b in col_par:
            if homogeneous is None:
                row.append(rand_form(rng, ring))
            else:
                want = (homogeneous + a + b) % 2
                w = DiffForm(ring, {S: p for S, p in rand_form(rng, ring).comps.items()
                                    if len(S) % 2 == want})
                row.append(w)
        entries.append(row)
    return FormMatrix(ring, row_par, col_par, entries)


def cubic_objects():
    x, y = Poly.gens(RING)
    X = mf_from_strings(RING, "x^3+y^3", [["x+y"]], [["x^2-x*y+y^2"]], name="X")
    return {"X": X, "S": shift(X), "K": koszul_mf([x, y], [x * x, y * y])}


def rand_letter(rng, cat, src=None, tgt=None):
    if isinstance(cat, hh.PolyAlgebra):
        return rand_exp(rng, len(cat.ring), 2)
    if isinstance(cat, hh.ExteriorAlgebra):
        k = rng.randint(0, cat.r)
        return tuple(sorted(rng.sample(range(cat.r), k)))
    if isinstance(cat, hh.MatrixCategory):
        ps = len(cat.data[src].parities)
        pt = len(cat.data[tgt].parities)
        return (src, tgt, rng.randrange(pt), rng.randrange(ps), rand_exp(rng, len(cat.ring), 2))
    raise TypeError(f"no letter sampler for {type(cat).__name__}")


def rand_word(rng, cat, n):
    objs = [rng.choice(cat.objects) for _ in range(n + 1)]
    return tuple(rand_letter(rng, cat, objs[(k + 1) % (n + 1)], objs[k]) for k in range(n + 1))


def rand_chain(rng, cat, max_len, terms=3, exact_len=None):
    out = {}
    for _ in range(rng.randint(1, terms)):
        n = rng.randint(0, max_len) if exact_len is None else exact_len
        out[rand_word(rng, cat, n)] = rand_coeff(rng)
    return hh.Chain(cat, out)


def rand_homogeneous_chain(rng, cat, max_len, terms=2):
    """A chain whose words share one parity."""
    c = rand_chain(rng, cat, max_len, terms)
    w0 = next(iter(c.terms))
    p = hh.word_parity(cat, w0)
    return hh.Chain(cat, {w: v for w, v in c.items() if hh.word_parity(cat, w) == p})


def rand_system(rng, ring):
    """g_i = x_i^a + c x_i^b x_j with j > i and b < a (or just x_i^a).

    Back-substitution from the last variable shows the origin is the only zero.
    """
    n = len(ring)
    dens = []
    for i in range(n):
        a = rng.randint(1, 3)
        g = Poly.monomial(ring, tuple(a if k == i else 0 for k in range(n)))
        if i + 1 < n and a > 1 and rng.random() < 0.7:
            # a multiple of x_i times a later variable keeps the system triangular
            exp = [0] * n
            exp[i] = rng.randint(1, a - 1)
            exp[rng.randrange(i + 1, n)] += 1
            if sum(exp) <= a:
                g = g + Poly.monomial(ring, tuple(exp), rand_coeff(rng))
        dens.append((g, 1))
    return dens


def rand_fraction(rng, ring):
    return GeneralizedFraction(rand_poly(rng, ring, 4, 4), rand_system(rng, ring))


# polynomial and module checks --------------------------------------------------------------


def check_ring_axioms(rng, length=4):
    a, b, c = (rand_poly(rng) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Poly.zero(RING)


def check_parse_render(rng, length=4):
    p = rand_poly(rng)
    assert parse_poly(p.render(), RING) == p, p.render()


def check_groebner_normal_form(rng, length=4):
    gens = [rand_poly(rng, terms=3, deg=3) for _ in range(2)]
    gens = [g for g in gens if g] or [Poly.var(RING, "x")]
    gb = buchberger(gens, rank=1, ring=RING, track=True)
    f = rand_poly(rng)
    nf = gb.normal_form([f])
    assert gb.normal_form(nf) == nf, "normal form is not idempotent"
    diff = [f - nf[0]]
    coeffs = gb.lift(diff)
    total = Poly.zero(RING)
    for c, g in zip(coeffs, gens):
        total = total + c * g
    assert total == diff[0], "lift does not reconstruct f - NF(f)"
    for h in gens:
        assert not gb.normal_form([h * rand_poly(rng)])[0], "ideal member with nonzero remainder"


def check_syzygies(rng, length=4):
    cols = rng.randint(1, 3)
    rows = rng.randint(1, 2)
    M = PolyMatrix(RING, [[rand_poly(rng, terms=2, deg=2) for _ in range(cols)]
                          for _ in range(rows)], rows, cols)
    for s in syzygies(M):
        v = M * PolyMatrix(RING, [[p] for p in s], cols, 1)
        assert v.is_zero(), "syzygy is not in the kernel"


def check_constructions(rng, length=4):
    objs = cubic_objects()
    X, Y = rng.choice(list(objs.values())), rng.choice(list(objs.values()))
    for Z in (tensor(X, n_twist(Y)), dual(X), shift(X), n_twist(X), direct_sum(X, Y),
              tensor(X, dual(Y))):
        Z.validate()


# forms ------------------------------------------------------------------------------------


def check_d_squared(rng, length=4):
    w = rand_form(rng)
    assert de_rham(de_rham(w)).is_zero()


def check_wedge_graded_commutative(rng, length=4):
    k, l = rng.randint(0, 2), rng.randint(0, 2)
    a, b = rand_form(rng, deg=k), rand_form(rng, deg=l)
    rhs = wedge(b, a)
    if (k * l) % 2:
        rhs = -rhs
    assert wedge(a, b) == rhs


def check_leibniz(rng, length=4):
    k = rng.randint(0, 2)
    a, b = rand_form(rng, deg=k), rand_form(rng)
    rhs = wedge(de_rham(a), b)
    second = wedge(a, de_rham(b))
    rhs = rhs + (-second if k % 2 else second)
    assert de_rham(wedge(a, b)) == rhs


def check_supertrace_symmetry(rng, length=4):
    p = [0, 1]
    q = [0, 0, 1]
    pm, pn = rng.randint(0, 1), rng.randint(0, 1)
    M = rand_form_matrix(rng, p, q, homogeneous=pm)
    N = rand_form_matrix(rng, q, p, homogeneous=pn)
    lhs = supertrace(M @ N)
    rhs = supertrace(N @ M)
    if (pm * pn) % 2:
        rhs = -rhs
    assert lhs == rhs


# residues ---------------------------------------------------------------------------------


def check_residue_independence(rng, length=4):
    ring = RING[:rng.randint(1, 2)]
    fr = rand_fraction(rng, ring)
    dens = [g ** k for g, k in fr.denominators]
    base = res_general(fr.numerator, dens)
    order = list(range(len(dens)))
    rng.shuffle(order)
    assert res_general(fr.numerator, dens, extra_power=1) == base
    assert res_general(fr.numerator, dens, order=order) == base


def check_residue_kills_ideal(rng, length=4):
    fr = rand_fraction(rng, RING)
    dens = [g ** k for g, k in fr.denominators]
    i = rng.randrange(len(dens))
    assert res_general(dens[i] * rand_poly(rng), dens) == 0


def check_monomial_denominators(rng, length=4):
    n = rng.randint(1, 3)
    ring = ("x", "y", "z")[:n]
    a = [rng.randint(1, 3) for _ in range(n)]
    g = rand_poly(rng, ring, 5, 5)
    dens = [Poly.monomial(ring, tuple(a[i] if k == i else 0 for k in range(n))) for i in range(n)]
    assert res_general(g, dens) == res_monomial(g, a)


def check_pairing_symmetric_bilinear(rng, length=4):
    from .residue import residue_pairing
    f = rng.choice([parse_poly(s, RING) for s in ("x*y", "x^3+y^3", "x^2+y^2", "x^4+y^4",
                                                    "x^2*y+y^3")])
    g, h, k = rand_poly(rng), rand_poly(rng), rand_poly(rng)
    c = rand_coeff(rng)
    assert residue_pairing(f, g, h) == residue_pairing(f, h, g)
    assert residue_pairing(f, g + k * c, h) == (residue_pairing(f, g, h)
                                                 + c * residue_pairing(f, k, h))


def check_kunneth_residue(rng, length=4):
    m, n = rng.randint(1, 2), rng.randint(1, 2)
    left = rand_fraction(rng, ("x", "y")[:m])
    right = rand_fraction(rng, ("u", "v")[:n])
    lhs, rhs = kunneth_residue_check(left, right)
    assert lhs == rhs, (lhs, rhs)


# Hochschild -------------------------------------------------------------------------------


def _poly_ambient(rng):
    f = rng.choice(["x^3+y^3", "x*y", "x^2*y+y^4"])
    return hh.PolyAlgebra(parse_poly(f, RING))


def _mf_ambient(small=False):
    objs = cubic_objects()
    if small:
        objs = {k: objs[k] for k in ("X", "S")}
    return hh.MatrixCategory.from_mfs(objs)


def _curved_ambient():
    return hh.MatrixCategory.stripped(cubic_objects())


def check_b_squared_poly(rng, length=4):
    c = rand_chain(rng, _poly_ambient(rng), length)
    assert hh.hochschild_b(hh.hochschild_b(c)).is_zero()


def check_b_squared_mf(rng, length=4):
    c = rand_chain(rng, _mf_ambient(), length)
    assert hh.hochschild_b(hh.hochschild_b(c)).is_zero()


def check_b_squared_curved(rng, length=4):
    c = rand_chain(rng, _curved_ambient(), length)
    assert hh.hochschild_b(hh.hochschild_b(c)).is_zero()


def check_curved_axiom(rng, length=4):
    """d^2 = [h, -] on single letters."""
    cat = rng.choice([_mf_ambient(), _curved_ambient()])
    s, t = rng.choice(cat.objects), rng.choice(cat.objects)
    a = {rand_letter(rng, cat, s, t): Fraction(1)}
    dd = hh.el_d(cat, hh.el_d(cat, a))
    comm = hh.el_add(hh.el_mul(cat, cat.curvature(t), a),
                     hh.el_scale(hh.el_mul(cat, a, cat.curvature(s)), -1))
    assert dd == comm


def check_eps_chain_map(rng, length=4):
    cat = _poly_ambient(rng)
    c = rand_chain(rng, cat, min(length, 3))
    lhs = hkr_epsilon(hh.hochschild_b(c))
    rhs = wedge(-d_poly(cat.f), hkr_epsilon(c))
    assert lhs == rhs


def check_eps_multiplicative(rng, length=4):
    cat = hh.PolyAlgebra(Poly.zero(RING))
    a = rand_chain(rng, cat, 2, 2)
    b = rand_chain(rng, cat, 2, 2)
    assert hkr_epsilon(hh.shuffle_star(a, b)) == wedge(hkr_epsilon(a), hkr_epsilon(b))


def check_shuffle_algebra(rng, length=4):
    cat = _poly_ambient(rng)
    L = min(length, 3)
    a, b, c = (rand_homogeneous_chain(rng, cat, L, 2) for _ in range(3))
    s = hh.shuffle_star
    pa = hh.word_parity(cat, next(iter(a.terms)))
    pb = hh.word_parity(cat, next(iter(b.terms)))
    assert s(s(a, b), c) == s(a, s(b, c)), "shuffle product is not associative"
    assert s(a, b) == s(b, a).scale(-1 if pa * pb % 2 else 1), "not graded commutative"


def check_b0_central(rng, length=4):
    cat = _poly_ambient(rng)
    a = rand_homogeneous_chain(rng, cat, 2)
    b = rand_chain(rng, cat, 2)
    pa = hh.word_parity(cat, next(iter(a.terms)))
    s = hh.shuffle_star
    lhs = hh.b0(s(a, b))
    assert lhs == s(hh.b0(a), b)
    assert lhs == s(a, hh.b0(b)).scale(-1 if pa % 2 else 1)


def check_kunneth_chain_map(rng, length=4):
    C = _mf_ambient(small=True)
    D = hh.PolyAlgebra(parse_poly("x^2+y", RING))
    T = hh.TensorCategory(C, D)
    L = min(length, 3)
    c1 = rand_homogeneous_chain(rng, C, L, 1)
    c2 = rand_chain(rng, D, L, 2)
    p = hh.word_parity(C, next(iter(c1.terms)))
    k = hh.kunneth_star
    lhs = hh.hochschild_b(k(c1, c2, T))
    rhs = k(hh.hochschild_b(c1), c2, T) + k(c1, hh.hochschild_b(c2), T).scale(-1 if p else 1)
    assert lhs == rhs


def check_phi_chain_map(rng, length=4):
    cat = rng.choice([_mf_ambient(), _curved_ambient()])
    op = hh.OppositeCategory(cat)
    c = rand_chain(rng, cat, length)
    assert hh.hochschild_b(hh.phi_op(c, op)) == hh.phi_op(hh.hochschild_b(c), op)


def check_psi_chain_map(rng, length=4):
    cat = _mf_ambient()
    D = hh.dual_category(cat)
    c = rand_chain(rng, cat, length)
    assert hh.hochschild_b(hh.psi_mf(c, D)) == hh.psi_mf(hh.hochschild_b(c), D)


def check_pushforward_chain_map(rng, length=4):
    src = _mf_ambient(small=True)
    tgt = hh.MatrixCategory.stripped({k: src.data[k].mf for k in src.objects})
    phi = hh.CdgFunctor(src, tgt, lambda o: o, lambda a: {a: Fraction(1)},
                        {o: src.delta_element(o) for o in src.objects})
    L = max(length, 3)
    c = rand_chain(rng, src, min(length, 2), 2)
    lhs = hh.hochschild_b(hh.pushforward(phi, c, L)).truncate(L - 1)
    rhs = hh.pushforward(phi, hh.hochschild_b(c), L).truncate(L - 1)
    assert lhs == rhs


def check_exp_inverse(rng, length=4):
    lam = hh.ExteriorAlgebra(2)
    b = {(rng.randrange(2),): rand_coeff(rng)}
    L = max(length, 2)
    e1 = hh.exp_class(lam, "*", b, L)
    e2 = hh.exp_class(lam, "*", hh.el_scale(b, -1), L)
    assert hh.shuffle_star(e1, e2).truncate(L) == hh.Chain(lam, {((),): 1})


def check_lambda_powers(rng, length=4):
    from math import factorial
    lam = hh.ExteriorAlgebra(1)
    y = hh.Chain(lam, {((), (0,)): 1})
    j = rng.randint(0, max(length, 1))
    p = hh.Chain(lam, {((),): 1})
    for _ in range(j):
        p = hh.shuffle_star(p, y)
    assert p == hh.Chain(lam, {((),) + ((0,),) * j: factorial(j)})


SUITES = {
    "ring_axioms": check_ring_axioms,
    "parse_render": check_parse_render,
    "groebner_normal_form": check_groebner_normal_form,
    "syzygies": check_syzygies,
    "constructions": check_constructions,
    "d_squared": check_d_squared,
    "wedge_graded_commutative": check_wedge_graded_commutative,
    "leibniz": check_leibniz,
    "supertrace_symmetry": check_supertrace_symmetry,
    "residue_independence": check_residue_independence,
    "residue_kills_ideal": check_residue_kills_ideal,
    "monomial_denominators": check_monomial_denominators,
    "pairing_symmetric_bilinear": check_pairing_symmetric_bilinear,
    "kunneth_residue": check_kunneth_residue,
    "b_squared_poly": check_b_squared_poly,
    "b_squared_mf": check_b_squared_mf,
    "b_squared_curved": check_b_squared_curved,
    "curved_axiom": check_curved_axiom,
    "eps_chain_map": check_eps_chain_map,
    "eps_multiplicative": check_eps_multiplicative,
    "shuffle_algebra": check_shuffle_algebra,
    "b0_central": check_b0_central,
    "kunneth_chain_map": check_kunneth_chain_map,
    "phi_chain_map": check_phi_chain_map,
    "psi_chain_map": check_psi_chain_map,
    "pushforward_chain_map": check_pushforward_chain_map,
    "exp_inverse": check_exp_inverse,
    "lambda_powers": check_lambda_powers,
}

# the pushforward suite is much slower than the rest
CASE_WEIGHT = {"pushforward_chain_map": 0.2}


def suite_rng(seed, name, case):
    return random.Random(f"{seed}:{name}:{case}")


def run_suites(seed=0, length=4, cases=20, names=None):
    """Run suites; returns (counts dict, failure or None).

    A failure is (suite name, case index, message); the run stops there.
    """
    counts = {}
    for name in names or SUITES:
        fn = SUITES[name]
        n = max(1, int(cases * CASE_WEIGHT.get(name, 1)))
        for case in range(n):
            try:
                fn(suite_rng(seed, name, case), length)
            except AssertionError as exc:
                return counts, (name, case, str(exc) or "assertion failed")
            counts[name] = counts.get(name, 0) + 1
    return counts, None
