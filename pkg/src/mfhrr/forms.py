"""Differential forms, form-valued matrices, the Chern character and the HKR map.

A form is a dict from sorted index tuples S to the Poly coefficient of dx_S.
Form-valued matrices act on Omega (x) P with forms written on the left, so a
product picks up the Koszul sign of moving a form past an odd matrix entry:

    (w E) (v F) = (-1)^{|E| |v|} (w ^ v) (E F).

See docs/signs.md for why this is the rule used by ``hkr_epsilon``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import (ConnectionMismatch, DimensionMismatch, InfiniteLength, NotIsolated,
                     OddDimension)
from .groebner import buchberger, standard_monomials
from .polycore import Poly


def merge_sign(S, T):
    """Sign of sorting the concatenation S + T (both sorted); 0 if they overlap."""
    if set(S) & set(T):
        return 0
    inversions = 0
    for s in S:
        inversions += sum(1 for t in T if t < s)
    return -1 if inversions % 2 else 1


class DiffForm:
    __slots__ = ("ring", "comps")

    def __init__(self, ring, comps=None):
        self.ring = tuple(ring)
        clean = {}
        for S, p in (comps or {}).items():
            S = tuple(S)
            if list(S) != sorted(set(S)):
                raise ValueError(f"index set {S} is not strictly increasing")
            if not isinstance(p, Poly):
                p = Poly.const(self.ring, p)
            if p:
                clean[S] = clean[S] + p if S in clean else p
                if not clean[S]:
                    del clean[S]
        self.comps = clean

    @classmethod
    def function(cls, p):
        return cls(p.ring, {(): p})

    @classmethod
    def dx(cls, ring, i):
        ring = tuple(ring)
        if isinstance(i, str):
            i = ring.index(i)
        return cls(ring, {(i,): Poly.const(ring, 1)})

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    def is_zero(self):
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def degrees(self):
        return sorted({len(S) for S in self.comps})

    def part(self, k):
        return DiffForm(self.ring, {S: p for S, p in self.comps.items() if len(S) == k})

    def odd_part(self):
        return DiffForm(self.ring, {S: p for S, p in self.comps.items() if len(S) % 2})

    def even_part(self):
        return DiffForm(self.ring, {S: p for S, p in self.comps.items() if len(S) % 2 == 0})

    def top_coefficient(self):
        """Coefficient of dx_1 ^ ... ^ dx_n."""
        S = tuple(range(len(self.ring)))
        return self.comps.get(S, Poly.zero(self.ring))

    def __add__(self, other):
        out = dict(self.comps)
        for S, p in other.comps.items():
            q = out[S] + p if S in out else p
            if q:
                out[S] = q
            else:
                out.pop(S, None)
        return _raw(self.ring, out)

    def __neg__(self):
        return _raw(self.ring, {S: -p for S, p in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply by a scalar or a 0-form polynomial."""
        out = {}
        for S, p in self.comps.items():
            q = p * c
            if q:
                out[S] = q
        return _raw(self.ring, out)

    def __mul__(self, c):
        if isinstance(c, DiffForm):
            return wedge(self, c)
        return self.scale(c)

    __rmul__ = scale

    def __xor__(self, other):
        return wedge(self, other)

    def sign_by_degree(self):
        """(-1)^{deg} applied componentwise."""
        return _raw(self.ring, {S: (-p if len(S) % 2 else p) for S, p in self.comps.items()})

    def __eq__(self, other):
        if isinstance(other, DiffForm):
            return self.ring == other.ring and self.comps == other.comps
        if isinstance(other, int) and other == 0:
            return not self.comps
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.comps.items())))

    def render(self):
        if not self.comps:
            return "0"
        pieces = []
        for S in sorted(self.comps, key=lambda S: (len(S), S)):
            p = self.comps[S]
            basis = "∧".join(f"d{self.ring[i]}" for i in S)
            coeff = p.render()
            if not basis:
                pieces.append(coeff)
            elif coeff == "1":
                pieces.append(basis)
            else:
                pieces.append(f"({coeff})*{basis}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"DiffForm({self.render()})"


def _raw(ring, comps):
    w = object.__new__(DiffForm)
    w.ring = ring
    w.comps = comps
    return w


def wedge(a, b):
    out = {}
    for S, p in a.comps.items():
        for T, q in b.comps.items():
            sign = merge_sign(S, T)
            if not sign:
                continue
            U = tuple(sorted(S + T))
            v = p * q
            if sign < 0:
                v = -v
            w = out[U] + v if U in out else v
            if w:
                out[U] = w
            else:
                out.pop(U, None)
    return _raw(a.ring, out)


def de_rham(w):
    out = DiffForm.zero(w.ring)
    for S, p in w.comps.items():
        for i in range(len(w.ring)):
            dp = p.diff(i)
            if dp:
                sign = merge_sign((i,), S)
                if sign:
                    U = tuple(sorted((i,) + S))
                    out = out + _raw(w.ring, {U: dp * sign})
    return out


def d_poly(p):
    """The 1-form dp."""
    return de_rham(DiffForm.function(p))


# form-valued matrices --------------------------------------------------------------


class FormMatrix:
    """Matrix of forms between Z/2-graded free modules.

    ``row_par`` are the parities of the target basis and ``col_par`` those of
    the source basis; an entry (i, j) has matrix parity row_par[i] + col_par[j].
    """

    __slots__ = ("ring", "row_par", "col_par", "entries")

    def __init__(self, ring, row_par, col_par, entries):
        self.ring = tuple(ring)
        self.row_par = list(row_par)
        self.col_par = list(col_par)
        if len(entries) != len(self.row_par) or any(len(r) != len(self.col_par) for r in entries):
            raise DimensionMismatch("entries do not match the parity split")
        self.entries = [list(r) for r in entries]

    @classmethod
    def from_poly_matrix(cls, M, row_par, col_par):
        return cls(M.ring, row_par, col_par,
                   [[DiffForm.function(a) for a in r] for r in M.entries])

    @classmethod
    def differential_of(cls, M, row_par, col_par):
        """Entrywise exterior derivative (the basis connection's commutator)."""
        return cls(M.ring, row_par, col_par, [[d_poly(a) for a in r] for r in M.entries])

    @classmethod
    def identity(cls, ring, par):
        n = len(par)
        one = DiffForm.function(Poly.const(ring, 1))
        z = DiffForm.zero(ring)
        return cls(ring, par, par, [[one if i == j else z for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (len(self.row_par), len(self.col_par))

    def __add__(self, other):
        self._same_shape(other)
        return FormMatrix(self.ring, self.row_par, self.col_par,
                          [[a + b for a, b in zip(r, s)]
                           for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return FormMatrix(self.ring, self.row_par, self.col_par,
                          [[-a for a in r] for r in self.entries])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return FormMatrix(self.ring, self.row_par, self.col_par,
                          [[a.scale(c) for a in r] for r in self.entries])

    def _same_shape(self, other):
        if self.row_par != other.row_par or self.col_par != other.col_par:
            raise DimensionMismatch("form matrices have different parity splits")

    def __matmul__(self, other):
        return self.compose(other)

    def compose(self, other, koszul=True):
        """Product self * other; ``koszul=False`` drops the form/matrix sign."""
        if self.col_par != other.row_par:
            raise DimensionMismatch("form matrices are not composable")
        rows, mid, cols = len(self.row_par), len(self.col_par), len(other.col_par)
        out = []
        for i in range(rows):
            row = []
            for k in range(cols):
                acc = DiffForm.zero(self.ring)
                for j in range(mid):
                    a = self.entries[i][j]
                    if not a:
                        continue
                    b = other.entries[j][k]
                    if not b:
                        continue
                    if koszul and (self.row_par[i] + self.col_par[j]) % 2:
                        b = b.sign_by_degree()
                    acc = acc + wedge(a, b)
                row.append(acc)
            out.append(row)
        return FormMatrix(self.ring, self.row_par, other.col_par, out)

    def is_zero(self):
        return all(not a for r in self.entries for a in r)


def supertrace(M):
    """Trace over the even block minus trace over the odd block."""
    if M.row_par != M.col_par:
        raise DimensionMismatch("supertrace needs an endomorphism")
    acc = DiffForm.zero(M.ring)
    for i, p in enumerate(M.row_par):
        acc = acc + (M.entries[i][i] if p == 0 else -M.entries[i][i])
    return acc


# Milnor algebra ----------------------------------------------------------------------


@lru_cache(maxsize=64)
def jacobian_basis(f):
    ring = f.ring
    partials = [f.diff(i) for i in range(len(ring))]
    gb = buchberger(partials, rank=1, ring=ring)
    try:
        standard_monomials(gb)
    except InfiniteLength as exc:
        raise NotIsolated(f"the Jacobian ideal of {f.render()} is not zero-dimensional") from exc
    return gb


@dataclass(frozen=True)
class MilnorClass:
    """Class of g dx_1...dx_n modulo df ^ Omega^{n-1}, stored as a normal form of g."""

    f: Poly
    rep: Poly

    def render(self):
        if not self.rep:
            return "0"
        top = "∧".join(f"d{v}" for v in self.f.ring)
        return f"({self.rep.render()})*{top}"

    def __add__(self, other):
        return milnor_reduce(self.rep + other.rep, self.f)

    def __neg__(self):
        return MilnorClass(self.f, -self.rep)

    def scale(self, c):
        return milnor_reduce(self.rep * c, self.f)


def milnor_reduce(w, f):
    """Normal form of the top coefficient of ``w`` modulo the Jacobian ideal of f."""
    g = w.top_coefficient() if isinstance(w, DiffForm) else w
    gb = jacobian_basis(f)
    return MilnorClass(f, gb.normal_form([g])[0])


def milnor_basis(f):
    """Standard monomials of the Milnor algebra, as polynomials."""
    gb = jacobian_basis(f)
    return [Poly.monomial(f.ring, exp) for _, exp in standard_monomials(gb)]


def chern(X):
    """(2/n!) tr(dA dB ... dA dB), n factors, reduced into the Milnor algebra."""
    return milnor_reduce(chern_form(X), X.f)


def chern_form(X):
    """The unreduced top form (2/n!) tr(dA dB ... dA dB)."""
    n = X.nvars
    if n % 2:
        raise OddDimension(f"the Chern character formula needs an even number of variables, got {n}")
    p0, p1 = X.p0, X.p1
    dA = FormMatrix.differential_of(X.A, [0] * p0, [0] * p1)
    dB = FormMatrix.differential_of(X.B, [0] * p1, [0] * p0)
    M = FormMatrix.identity(X.ring, [0] * p0)
    for k in range(n):
        M = M.compose(dA if k % 2 == 0 else dB, koszul=False)
    tr = DiffForm.zero(X.ring)
    for i in range(p0):
        tr = tr + M.entries[i][i]
    return tr.scale(Fraction(2, factorial(n)))


# the HKR map ---------------------------------------------------------------------------


def hkr_epsilon(chain):
    """Chain-level HKR map with the basis (Levi-Civita) connections.

    For a word a0[a1|...|am] with a_k : X_{k+1} -> X_k it returns

        sum over i_0..i_m >= 0 of (-1)^{sum i} / (m + sum i)!
            str(a0 (d'_1)^{i_0} a1' (d'_2)^{i_1} ... am' (d'_0)^{i_m})

    where a' and d' = [nabla, delta] are entrywise exterior derivatives.  The
    chain's category must provide ``letter_matrix``, ``src``, ``tgt``,
    ``parities`` and ``object_delta``.
    """
    cat = chain.category
    ring = cat.ring
    n = len(ring)
    total = DiffForm.zero(ring)
    cache_delta = {}

    def dprime(obj):
        if obj not in cache_delta:
            par = cat.parities(obj)
            cache_delta[obj] = FormMatrix.differential_of(cat.object_delta(obj), par, par)
        return cache_delta[obj]

    for word, coeff in chain.items():
        m = len(word) - 1
        if m > n:
            continue
        objs = [cat.src(a) for a in word]  # objs[k] = X_{k+1}
        for k in range(len(word)):
            nxt = word[(k + 1) % len(word)]
            if cat.tgt(nxt) != cat.src(word[k]):
                raise ConnectionMismatch(f"letters {word[k]} and {nxt} do not compose")
        a0 = word[0]
        mats = {0: FormMatrix.from_poly_matrix(cat.letter_matrix(a0),
                                               cat.parities(cat.tgt(a0)), cat.parities(cat.src(a0)))}
        for k in range(m + 1):
            dp = dprime(objs[k])
            grown = {}
            for I, M in mats.items():
                P = M
                j = 0
                while True:
                    if k + I + j > n:
                        break
                    term = P if j % 2 == 0 else -P
                    grown[I + j] = grown[I + j] + term if (I + j) in grown else term
                    j += 1
                    P = P.compose(dp)
                    if P.is_zero():
                        break
            mats = grown
            if k < m:
                a = word[k + 1]
                ap = FormMatrix.differential_of(cat.letter_matrix(a), cat.parities(cat.tgt(a)),
                                                cat.parities(cat.src(a)))
                mats = {I: M.compose(ap) for I, M in mats.items() if k + 1 + I <= n}
        for I, M in mats.items():
            st = supertrace(M)
            if st:
                total = total + st.scale(Fraction(coeff) / factorial(m + I))
    return total
