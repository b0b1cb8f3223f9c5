"""Gröbner bases for submodules of free modules Q^r over Q = k[x1..xn].

Vectors are handled internally as dicts ``{(position, exponent): Fraction}``.
The monomial order is grevlex; on modules it is position-over-term with
position 0 the largest.  Public functions take and return lists of ``Poly``.
"""

from fractions import Fraction
from itertools import product

from .errors import ArityMismatch, InfiniteLength, NotInModule, NotZeroDimensional
from .polycore import Poly


def _key(term):
    pos, exp = term
    return (-pos, sum(exp), tuple(-e for e in reversed(exp)))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _addmul(f, g, c, shift):
    """f += c * x^shift * g, in place."""
    for (pos, exp), v in g.items():
        t = (pos, tuple(x + y for x, y in zip(exp, shift)))
        w = f.get(t, 0) + c * v
        if w:
            f[t] = w
        else:
            f.pop(t, None)


def _leading(f):
    return max(f, key=_key)


def vector_to_internal(vec):
    out = {}
    for pos, p in enumerate(vec):
        for exp, c in p.terms.items():
            out[(pos, exp)] = c
    return out


def internal_to_vector(d, rank, ring):
    comps = [dict() for _ in range(rank)]
    for (pos, exp), c in d.items():
        comps[pos][exp] = c
    return [Poly._raw(tuple(ring), comp) for comp in comps]


def _as_vector(v):
    return [v] if isinstance(v, Poly) else list(v)


class GroebnerBasis:
    """A reduced Gröbner basis of a submodule of Q^rank.

    When built with ``track=True`` every basis element remembers how it is
    written in terms of the original generators, which is what ``lift`` uses.
    """

    def __init__(self, ring, rank, elements, cofactors, gens):
        self.ring = tuple(ring)
        self.rank = rank
        self._elems = elements
        self._cofs = cofactors
        self._gens = gens
        self._lts = [_leading(g) for g in elements]
        self._by_pos = {}
        for k, (pos, _) in enumerate(self._lts):
            self._by_pos.setdefault(pos, []).append(k)

    @property
    def tracked(self):
        return self._cofs is not None

    @property
    def generators(self):
        return [internal_to_vector(g, self.rank, self.ring) for g in self._elems]

    def leading_terms(self):
        return list(self._lts)

    def __len__(self):
        return len(self._elems)

    def _reduce(self, f, track=False):
        f = dict(f)
        rem = {}
        quot = {} if track else None
        elems, lts, by_pos = self._elems, self._lts, self._by_pos
        while f:
            t = _leading(f)
            c = f[t]
            pos, exp = t
            for k in by_pos.get(pos, ()):
                lexp = lts[k][1]
                if _divides(lexp, exp):
                    g = elems[k]
                    mult = c / g[lts[k]]
                    shift = _sub_exp(exp, lexp)
                    _addmul(f, g, -mult, shift)
                    if track:
                        _addmul(quot, self._cofs[k], mult, shift)
                    break
            else:
                rem[t] = c
                del f[t]
        return rem, quot

    def normal_form(self, v):
        v = _as_vector(v)
        self._check(v)
        rem, _ = self._reduce(vector_to_internal(v))
        return internal_to_vector(rem, self.rank, self.ring)

    def contains(self, v):
        v = _as_vector(v)
        self._check(v)
        rem, _ = self._reduce(vector_to_internal(v))
        return not rem

    def lift(self, v):
        """Coefficients c with v = sum c_i * gens_i, or NotInModule."""
        if not self.tracked:
            raise ValueError("lift requires a basis built with track=True")
        v = _as_vector(v)
        self._check(v)
        rem, quot = self._reduce(vector_to_internal(v), track=True)
        if rem:
            raise NotInModule("vector is not in the submodule")
        return internal_to_vector(quot, len(self._gens), self.ring)

    def _check(self, v):
        if len(v) != self.rank:
            raise ArityMismatch(f"vector of length {len(v)} in a module of rank {self.rank}")
        for p in v:
            if p.ring != self.ring:
                raise ArityMismatch("ring mismatch")


def buchberger(gens, rank=None, ring=None, track=False):
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    ``gens`` is a list of vectors (lists of Poly) or of Poly for ideals.
    Uses the Gebauer-Möller installation of the pair criteria and the normal
    selection strategy; the output is auto-reduced, monic and sorted.
    """
    vecs = [_as_vector(g) for g in gens]
    if ring is None:
        if not vecs or not vecs[0]:
            raise ValueError("ring must be given for an empty generating set")
        ring = vecs[0][0].ring
    ring = tuple(ring)
    if rank is None:
        if not vecs:
            raise ValueError("rank must be given for an empty generating set")
        rank = len(vecs[0])
    for v in vecs:
        if len(v) != rank:
            raise ArityMismatch(f"generator of length {len(v)} in a module of rank {rank}")
        for p in v:
            if p.ring != ring:
                raise ArityMismatch("ring mismatch among generators")
    ideal = rank == 1

    elems = []
    cofs = [] if track else None
    lts = []
    active = []
    pairs = {}

    def normalize(f, cof):
        lt = _leading(f)
        inv = 1 / f[lt]
        f = {t: v * inv for t, v in f.items()}
        if cof is not None:
            cof = {t: v * inv for t, v in cof.items()}
        return f, cof, lt

    def update(h):
        hpos, hexp = lts[h]
        same = [g for g in active if lts[g][0] == hpos]
        lcms = {g: _lcm(hexp, lts[g][1]) for g in same}
        C = list(same)
        D = []
        while C:
            g1 = C.pop(0)
            l1 = lcms[g1]
            if (ideal and _coprime(hexp, lts[g1][1])) or not (
                any(_divides(lcms[g2], l1) for g2 in C) or any(_divides(lcms[g2], l1) for g2 in D)
            ):
                D.append(g1)
        E = [g for g in D if not (ideal and _coprime(hexp, lts[g][1]))]
        for key in list(pairs):
            i, j = key
            ppos, l = pairs[key]
            if ppos == hpos and _divides(hexp, l):
                if _lcm(lts[i][1], hexp) != l and _lcm(lts[j][1], hexp) != l:
                    del pairs[key]
        for g in E:
            pairs[(g, h)] = (hpos, lcms[g])
        active[:] = [g for g in active
                     if not (lts[g][0] == hpos and _divides(hexp, lts[g][1]))] + [h]

    def reduce_by_active(f, cof):
        # full reduction of f by the active elements, tracking cofactors if needed
        f = dict(f)
        cof = dict(cof) if cof is not None else None
        rem = {}
        by_pos = {}
        for i in active:
            by_pos.setdefault(lts[i][0], []).append(i)
        while f:
            t = _leading(f)
            c = f[t]
            pos, exp = t
            for i in by_pos.get(pos, ()):
                lexp = lts[i][1]
                if _divides(lexp, exp):
                    shift = _sub_exp(exp, lexp)
                    _addmul(f, elems[i], -c, shift)
                    if cof is not None:
                        _addmul(cof, cofs[i], -c, shift)
                    break
            else:
                rem[t] = c
                del f[t]
        return rem, cof

    def add(f, cof):
        f, cof, lt = normalize(f, cof)
        elems.append(f)
        lts.append(lt)
        if track:
            cofs.append(cof)
        update(len(elems) - 1)

    for k, v in enumerate(vecs):
        f = vector_to_internal(v)
        cof = {(k, (0,) * len(ring)): Fraction(1)} if track else None
        f, cof = reduce_by_active(f, cof)
        if f:
            add(f, cof)

    while pairs:
        key = min(pairs, key=lambda kk: (_key((pairs[kk][0], pairs[kk][1])), kk))
        ppos, l = pairs.pop(key)
        i, j = key
        fi, fj = elems[i], elems[j]
        si = _sub_exp(l, lts[i][1])
        sj = _sub_exp(l, lts[j][1])
        s = {}
        _addmul(s, fi, Fraction(1), si)
        _addmul(s, fj, Fraction(-1), sj)
        scof = None
        if track:
            scof = {}
            _addmul(scof, cofs[i], Fraction(1), si)
            _addmul(scof, cofs[j], Fraction(-1), sj)
        s, scof = reduce_by_active(s, scof)
        if s:
            add(s, scof)

    # auto-reduction of the minimal basis
    final = sorted(active, key=lambda i: _key(lts[i]), reverse=True)
    red_elems = []
    red_cofs = [] if track else None
    for idx, i in enumerate(final):
        f = elems[i]
        cof = cofs[i] if track else None
        lt = lts[i]
        tail = {t: v for t, v in f.items() if t != lt}
        tail_cof = None
        others = [k for k in final if k != i]
        saved = active[:]
        active[:] = others
        tail, tail_cof = reduce_by_active(tail, {} if track else None)
        active[:] = saved
        newf = dict(tail)
        newf[lt] = f[lt]
        red_elems.append(newf)
        if track:
            # f = lt + tail_orig ; tail_orig = tail + (tail_orig - tail) with the
            # difference a combination of other elements recorded in -tail_cof
            newcof = dict(cof)
            for t, v in tail_cof.items():
                w = newcof.get(t, 0) + v
                if w:
                    newcof[t] = w
                else:
                    newcof.pop(t, None)
            red_cofs.append(newcof)
    return GroebnerBasis(ring, rank, red_elems, red_cofs, vecs)


def normal_form(v, gb):
    return gb.normal_form(v)


def lift(v, gens, rank=None, ring=None):
    """Express ``v`` as a combination of ``gens`` (raises NotInModule)."""
    v = _as_vector(v)
    if ring is None:
        ring = v[0].ring
    gb = buchberger(gens, rank=len(v) if rank is None else rank, ring=ring, track=True)
    return gb.lift(v)


def syzygies(M):
    """Generators of ker(M: Q^cols -> Q^rows), as vectors of length ``cols``.

    Computed by elimination: a Gröbner basis of the columns of [M; I] under
    position-over-term with the M-rows first; basis elements whose leading term
    sits in the identity block carry exactly the kernel.
    """
    ring, r, c = M.ring, M.rows, M.cols
    if c == 0:
        return []
    zero = Poly.zero(ring)
    one = Poly.const(ring, 1)
    gens = []
    for j in range(c):
        gens.append(M.column(j) + [one if k == j else zero for k in range(c)])
    gb = buchberger(gens, rank=r + c, ring=ring)
    out = []
    for g, (pos, _) in zip(gb._elems, gb._lts):
        if pos >= r:
            vec = internal_to_vector(g, r + c, ring)
            out.append(vec[r:])
    return out


def power_membership(J, i, cap=64):
    """Smallest N <= cap with x_i^N in the ideal J, together with a lifting."""
    J = list(J)
    ring = J[0].ring
    if isinstance(i, str):
        i = ring.index(i)
    gb = buchberger(J, rank=1, ring=ring, track=True)
    for N in range(1, cap + 1):
        exp = tuple(N if k == i else 0 for k in range(len(ring)))
        target = [Poly.monomial(ring, exp)]
        if gb.contains(target):
            return N, gb.lift(target)
    raise NotZeroDimensional(f"no power of {ring[i]} up to {cap} lies in the ideal")


class ModulePresentation:
    """Cokernel Q^rank / <relations>."""

    def __init__(self, ring, rank, relations):
        self.ring = tuple(ring)
        self.rank = rank
        self.relations = [_as_vector(r) for r in relations]
        for r in self.relations:
            if len(r) != rank:
                raise ArityMismatch("relation has the wrong length")

    def groebner(self, track=False):
        return buchberger(self.relations, rank=self.rank, ring=self.ring, track=track)


def standard_monomials(gb):
    """All (position, exponent) pairs outside the leading-term module, sorted.

    Raises InfiniteLength when the quotient is not finite-dimensional.
    """
    n = len(gb.ring)
    by_pos = {}
    for pos, exp in gb.leading_terms():
        by_pos.setdefault(pos, []).append(exp)
    out = []
    for pos in range(gb.rank):
        lts = by_pos.get(pos, [])
        if n == 0:
            if not lts:
                out.append((pos, ()))
            continue
        bounds = []
        for i in range(n):
            pure = [e[i] for e in lts if all(e[k] == 0 for k in range(n) if k != i)]
            if not pure:
                raise InfiniteLength(f"position {pos}: no pure power of variable {gb.ring[i]}")
            bounds.append(min(pure))
        for exp in product(*[range(b) for b in bounds]):
            if not any(_divides(lt, exp) for lt in lts):
                out.append((pos, exp))
    out.sort(key=_key, reverse=True)
    return out


def quotient_dimension(pres):
    """dim_k of a finite-length quotient module (InfiniteLength otherwise)."""
    if isinstance(pres, GroebnerBasis):
        return len(standard_monomials(pres))
    return len(standard_monomials(pres.groebner()))


def ideal_quotient_dimension(gens):
    ring = gens[0].ring
    return quotient_dimension(ModulePresentation(ring, 1, [[g] for g in gens]))
