"""Homology of Z/2-periodic complexes of free modules with finite-length homology.

A complex is a MatrixFactorization with f = 0:

    P0 --B--> P1 --A--> P0,    H0 = ker B / im A,    H1 = ker A / im B.

The exact route goes through Gröbner bases: kernel generators by syzygies,
image generators lifted into kernel coordinates, then standard monomials of
the resulting presentation.  ``truncated_oracle`` is an independent route by
plain linear algebra on graded pieces, used only to cross-check.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import InfiniteLength, PotentialMismatch
from .groebner import ModulePresentation, buchberger, standard_monomials, syzygies
from .mfcat import hom_complex, tensor
from .polycore import PolyMatrix


@dataclass(frozen=True)
class HomologyDims:
    h0: int
    h1: int

    @property
    def euler(self):
        return self.h0 - self.h1

    def __iter__(self):
        return iter((self.h0, self.h1))


class HomologyPiece:
    """H = ker(out) / im(into) at one parity, with a standard-monomial k-basis.

    ``into`` maps the other component here, ``out`` maps this component away.
    """

    def __init__(self, into, out):
        self.ring = into.ring
        self.rank = into.rows
        self.kernel = syzygies(out) if self.rank else []
        if not self.kernel:
            self.basis = []
            return
        m = len(self.kernel)
        self._kgb = buchberger(self.kernel, rank=self.rank, ring=self.ring, track=True)
        rels = [self._kgb.lift(col) for col in into.columns()]
        kmat = PolyMatrix(self.ring, [[self.kernel[j][i] for j in range(m)]
                                      for i in range(self.rank)], self.rank, m)
        rels += syzygies(kmat)
        self.presentation = ModulePresentation(self.ring, m, rels)
        self._rgb = self.presentation.groebner()
        self.basis = standard_monomials(self._rgb)

    @property
    def dim(self):
        return len(self.basis)

    def induced_trace(self, alpha):
        """Trace of the map induced on H by the chain endomorphism block ``alpha``."""
        if not self.basis:
            return Fraction(0)
        ring = self.ring
        images = []
        for s in range(len(self.kernel)):
            v = alpha * PolyMatrix(ring, [[p] for p in self.kernel[s]], self.rank, 1)
            images.append(self._kgb.lift(v.column(0)))
        total = Fraction(0)
        for (s, mono) in self.basis:
            vec = [p.mul_monomial(mono) for p in images[s]]
            nf = self._rgb.normal_form(vec)
            total += nf[s].coefficient(mono)
        return total


def _check_complex(C):
    if C.f:
        raise PotentialMismatch("homology needs a complex (potential 0)")


def z2_homology_dims(C):
    """(dim H0, dim H1) of a Z/2-periodic complex; InfiniteLength if not finite."""
    _check_complex(C)
    if C.is_zero_object():
        return HomologyDims(0, 0)
    h0 = HomologyPiece(C.A, C.B).dim
    h1 = HomologyPiece(C.B, C.A).dim
    return HomologyDims(h0, h1)


def homology_supertrace(C, alpha):
    """dim-weighted supertrace of the endomorphism induced by an even chain map.

    ``alpha`` is a square PolyMatrix on P0 + P1 (P0 first).
    """
    _check_complex(C)
    p0, p1 = C.p0, C.p1
    a00 = PolyMatrix(C.ring, [[alpha[i, j] for j in range(p0)] for i in range(p0)], p0, p0)
    a11 = PolyMatrix(C.ring, [[alpha[p0 + i, p0 + j] for j in range(p1)] for i in range(p1)],
                     p1, p1)
    t0 = HomologyPiece(C.A, C.B).induced_trace(a00) if p0 else Fraction(0)
    t1 = HomologyPiece(C.B, C.A).induced_trace(a11) if p1 else Fraction(0)
    return t0 - t1


def euler_chi(X, Y):
    """dim H0 Hom(X, Y) - dim H1 Hom(X, Y)."""
    return z2_homology_dims(hom_complex(X, Y)).euler


def theta(X, Y):
    """dim H0 (X (x) Y) - dim H1 (X (x) Y) for X in mf(f), Y in mf(-f)."""
    if X.f != -Y.f:
        raise PotentialMismatch("theta needs factorizations of opposite potentials")
    return z2_homology_dims(tensor(X, Y)).euler


# independent oracle -------------------------------------------------------------


def _nullspace(rows, ncols):
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    M = DomainMatrix([[QQ(c.numerator, c.denominator) for c in r] for r in rows],
                     (len(rows), ncols), QQ)
    ns = M.nullspace()
    out = []
    for r in ns.to_Matrix().tolist():
        out.append([Fraction(int(c.p), int(c.q)) for c in r])
    return out


def _grading_space(C):
    """Basis of all gradings making A and B homogeneous.

    Unknowns: variable weights w (n), shifts s (P0), t (P1), and the degree D
    of B.  A preserves weight, B raises it by D.
    """
    n, p0, p1 = C.nvars, C.p0, C.p1
    ncols = n + p0 + p1 + 1
    rows = []
    for i in range(p0):
        for j in range(p1):
            for exp in C.A[i, j].terms:
                r = [Fraction(e) for e in exp] + [Fraction(0)] * (p0 + p1 + 1)
                r[n + i] += 1
                r[n + p0 + j] -= 1
                rows.append(r)
    for j in range(p1):
        for i in range(p0):
            for exp in C.B[j, i].terms:
                r = [Fraction(e) for e in exp] + [Fraction(0)] * (p0 + p1 + 1)
                r[n + p0 + j] += 1
                r[n + i] -= 1
                r[-1] -= 1
                rows.append(r)
    return _nullspace(rows, ncols)


def _positive_combination(space, n):
    """Coefficients lam with sum lam_b * w_b >= 1 on every variable, or None."""
    if not space:
        return None
    # first try to realize the standard grading exactly
    rows = [[v[i] for v in space] for i in range(n)]
    sol = _solve(rows, [Fraction(1)] * n, len(space))
    if sol is not None:
        return sol
    from scipy.optimize import linprog
    import numpy as np
    m = len(space)
    W = np.array([[float(v[i]) for v in space] for i in range(n)])
    res = linprog(np.zeros(m), A_ub=-W, b_ub=-np.ones(n), bounds=[(None, None)] * m)
    if not res.success:
        return None
    lam = [Fraction(x).limit_denominator(1000) for x in res.x]
    if all(sum(l * v[i] for l, v in zip(lam, space)) > 0 for i in range(n)):
        return lam
    return None


def _solve(rows, rhs, ncols):
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    M = DomainMatrix([[QQ(c.numerator, c.denominator) for c in r] for r in aug],
                     (len(aug), ncols + 1), QQ)
    R, pivots = M.rref()
    if ncols in pivots:
        return None
    R = R.to_Matrix().tolist()
    sol = [Fraction(0)] * ncols
    for k, p in enumerate(pivots):
        c = R[k][-1]
        sol[p] = Fraction(int(c.p), int(c.q))
    return sol


def _monomials_up_to(weights, bound):
    """All exponent tuples with sum(weights[i] * e[i]) <= bound."""
    n = len(weights)
    out = []

    def rec(i, prefix, used):
        if i == n:
            out.append(tuple(prefix))
            return
        e = 0
        while used + e * weights[i] <= bound:
            prefix.append(e)
            rec(i + 1, prefix, used + e * weights[i])
            prefix.pop()
            e += 1

    if bound >= 0:
        rec(0, [], 0)
    return out


def _rank(columns, row_index):
    """Exact rank of sparse rational columns (fraction-free integer elimination)."""
    rows = []
    for col in columns:
        if not col:
            continue
        den = 1
        for c in col.values():
            den = lcm(den, Fraction(c).denominator)
        rows.append({r: int(Fraction(c) * den) for r, c in col.items()})
    rank = 0
    pivots = {}
    for v in rows:
        v = dict(v)
        while v:
            r = min(v)
            if r not in pivots:
                pivots[r] = v
                rank += 1
                break
            p = pivots[r]
            a, b = p[r], v[r]
            out = {}
            for k in set(v) | set(p):
                c = a * v.get(k, 0) - b * p.get(k, 0)
                if c:
                    out[k] = c
            g = 0
            for c in out.values():
                g = gcd(g, c)
            v = {k: c // g for k, c in out.items()} if g > 1 else out
    return rank


def _apply(M, position, row_index):
    """Image of x^m e_j under M as a sparse column keyed by row-index numbers."""
    j, m = position
    col = {}
    for i in range(M.rows):
        for exp, c in M[i, j].terms.items():
            key = (i, tuple(a + b for a, b in zip(exp, m)))
            r = row_index.setdefault(key, len(row_index))
            col[r] = col.get(r, 0) + c
    return {r: c for r, c in col.items() if c}


def truncated_oracle(C, N):
    """Homology dimensions from graded pieces of level <= N, by exact linear algebra.

    When A and B are homogeneous for some positive grading the complex splits
    into finite-dimensional graded pieces and H is their direct sum; pieces of
    level at most N are summed.  Otherwise falls back to the degree filtration
    dim(ker B on V_N) - dim(im A meets V_N), with images taken from V_{2N}.
    """
    _check_complex(C)
    if C.is_zero_object():
        return HomologyDims(0, 0)
    n = C.nvars
    space = [_integral(v) for v in _grading_space(C)]
    lam = _positive_combination(space, n) if n else None
    if n == 0:
        return _oracle_filtered(C, 0)
    if lam is None:
        return _oracle_filtered(C, N)
    p0, p1 = C.p0, C.p1

    def combo(v):
        return sum(l * x for l, x in zip(lam, v))

    omega = [combo([v[i] for v in space]) for i in range(n)]
    s_om = [combo([v[n + i] for v in space]) for i in range(p0)]
    t_om = [combo([v[n + p0 + j] for v in space]) for j in range(p1)]
    D_om = combo([v[-1] for v in space])
    scale = 1
    for q in omega + s_om + t_om + [D_om]:
        scale = lcm(scale, Fraction(q).denominator)
    omega = [int(q * scale) for q in omega]
    s_om = [int(q * scale) for q in s_om]
    t_om = [int(q * scale) for q in t_om]
    D_om = int(D_om * scale)
    bound = N * scale
    W = [[int(v[i]) for i in range(n)] for v in space]
    S = [[int(v[n + i]) for i in range(p0)] for v in space]
    T = [[int(v[n + p0 + j]) for j in range(p1)] for v in space]
    D = tuple(int(v[-1]) for v in space)

    def weight(exp, shifts, k):
        return tuple(sum(w * e for w, e in zip(Wb, exp)) + sh[k] for Wb, sh in zip(W, shifts))

    reach = bound + abs(D_om)
    shifts_all = s_om + t_om
    lo = min(shifts_all) if shifts_all else 0
    monos = _monomials_up_to(omega, reach - lo)

    def blocks(count, shifts, om_shift):
        out = {}
        levels = {}
        for k in range(count):
            for m in monos:
                lv = sum(o * e for o, e in zip(omega, m)) + om_shift[k]
                if lv <= reach:
                    beta = weight(m, shifts, k)
                    out.setdefault(beta, []).append((k, m))
                    levels[beta] = lv
        return out, levels

    P0, lev0 = blocks(p0, S, s_om)
    P1, lev1 = blocks(p1, T, t_om)

    def half(here, levels, there, into, out, shift_from):
        total = 0
        for beta, positions in here.items():
            if levels[beta] > bound:
                continue
            rows = {}
            ker = len(positions) - _rank([_apply(out, p, rows) for p in positions], rows)
            src = tuple(b - d for b, d in zip(beta, shift_from))
            rows = {}
            im = _rank([_apply(into, p, rows) for p in there.get(src, [])], rows)
            total += ker - im
        return total

    zero = (0,) * len(D)
    h0 = half(P0, lev0, P1, C.A, C.B, zero)
    h1 = half(P1, lev1, P0, C.B, C.A, D)
    return HomologyDims(h0, h1)


def _integral(v):
    den = 1
    for c in v:
        den = lcm(den, Fraction(c).denominator)
    return [Fraction(c) * den for c in v]


def _oracle_filtered(C, N):
    n = C.nvars
    ones = [Fraction(1)] * n

    def part(into, out, rank_here, rank_there):
        low = _monomials_up_to(ones, N)
        high = _monomials_up_to(ones, 2 * N)
        rows = {}
        cols = [_apply(out, (k, m), rows) for k in range(rank_here) for m in low]
        ker = len(cols) - _rank(cols, rows)
        rows = {}
        img = [_apply(into, (k, m), rows) for k in range(rank_there) for m in high]
        total = _rank(img, rows)
        high_rows = {key: r for key, r in rows.items() if sum(key[1]) > N}
        remap = {r: t for t, r in enumerate(sorted(high_rows.values()))}
        proj = [{remap[r]: c for r, c in col.items() if r in remap} for col in img]
        inside = total - _rank(proj, remap)
        return ker - inside

    h0 = part(C.A, C.B, C.p0, C.p1)
    h1 = part(C.B, C.A, C.p1, C.p0)
    return HomologyDims(h0, h1)


def stabilized_oracle(C, start=8, cap=64):
    """Double N from ``start`` until two consecutive oracle values agree."""
    N = start
    prev = truncated_oracle(C, N)
    while N < cap:
        N *= 2
        cur = truncated_oracle(C, N)
        if cur == prev:
            return cur, N
        prev = cur
    raise InfiniteLength(f"oracle did not stabilize up to N={cap}")
