"""Matrix factorizations as explicit pairs of polynomial matrices.

An object of mf(Q, f) is stored as (A, B) with A: P1 -> P0 (p0 x p1) and
B: P0 -> P1 (p1 x p0), AB = f and BA = f.  Whenever a full odd endomorphism
is needed the basis is ordered P0 first, then P1, and

    delta = [[0, A],
             [B, 0]].

Sign conventions are collected in docs/signs.md.
"""

import json
from itertools import combinations

from .errors import NotAFactorization, PotentialMismatch, RingMismatch
from .polycore import Poly, PolyMatrix, block_matrix, parse_poly, submatrix


class MatrixFactorization:
    __slots__ = ("ring", "f", "A", "B", "name")

    def __init__(self, A, B, f, name=None, check=True):
        ring = A.ring
        if B.ring != ring:
            raise RingMismatch("A and B live over different rings")
        if not isinstance(f, Poly):
            f = Poly.const(ring, f)
        if f.ring != ring:
            raise RingMismatch("potential lives over a different ring")
        self.ring = ring
        self.f = f
        self.A = A
        self.B = B
        self.name = name
        if check:
            self.validate()

    @property
    def p0(self):
        return self.A.rows

    @property
    def p1(self):
        return self.A.cols

    @property
    def rank(self):
        return (self.p0, self.p1)

    @property
    def parities(self):
        return [0] * self.p0 + [1] * self.p1

    @property
    def nvars(self):
        return len(self.ring)

    def is_zero_object(self):
        return self.p0 == 0 and self.p1 == 0

    def validate(self):
        A, B, f = self.A, self.B, self.f
        if B.shape != (A.cols, A.rows):
            raise NotAFactorization(f"shapes {A.shape} and {B.shape} do not fit together")
        if f and A.rows != A.cols:
            raise NotAFactorization("a factorization of a nonzero potential needs p0 = p1")
        AB = A * B
        if AB != PolyMatrix.scalar(self.ring, A.rows, f):
            raise NotAFactorization("A*B is not f times the identity", AB)
        BA = B * A
        if BA != PolyMatrix.scalar(self.ring, A.cols, f):
            raise NotAFactorization("B*A is not f times the identity", BA)
        return self

    def delta(self):
        """The odd endomorphism [[0, A], [B, 0]] on P0 + P1."""
        p0, p1 = self.p0, self.p1
        return block_matrix(self.ring, [[None, self.A], [self.B, None]], [p0, p1], [p0, p1])

    def renamed(self, name):
        return MatrixFactorization(self.A, self.B, self.f, name=name, check=False)

    def __eq__(self, other):
        if not isinstance(other, MatrixFactorization):
            return NotImplemented
        return (self.ring, self.f, self.A, self.B) == (other.ring, other.f, other.A, other.B)

    def __hash__(self):
        return hash((self.ring, self.f, self.A, self.B))

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"<MF {label}f={self.f.render()} rank={self.rank}>"

    # serialization --------------------------------------------------------

    def to_json(self):
        return {"ring": list(self.ring), "f": self.f.render(),
                "A": self.A.to_strings(), "B": self.B.to_strings()}

    @classmethod
    def from_json(cls, data, name=None):
        if isinstance(data, str):
            data = json.loads(data)
        ring = tuple(data["ring"])
        f = parse_poly(data["f"], ring)
        A = _matrix_from_rows(ring, data["A"])
        B = _matrix_from_rows(ring, data["B"])
        if A.rows == 0 and B.rows == 0:
            pass
        elif A.cols == 0 and B.rows == 0:
            B = PolyMatrix.zeros(ring, 0, A.rows)
        elif B.cols == 0 and A.rows == 0:
            A = PolyMatrix.zeros(ring, 0, B.rows)
        return cls(A, B, f, name=name or data.get("name"))


def _matrix_from_rows(ring, rows):
    rows = [[parse_poly(str(e), ring) for e in r] for r in rows]
    return PolyMatrix(ring, rows)


def mf_new(A, B, f, name=None):
    """Validated constructor."""
    return MatrixFactorization(A, B, f, name=name)


def mf_from_strings(ring, f, A, B, name=None):
    ring = tuple(ring)
    return MatrixFactorization(_matrix_from_rows(ring, A), _matrix_from_rows(ring, B),
                               parse_poly(f, ring) if isinstance(f, str) else f, name=name)


def zero_object(ring, f=None):
    ring = tuple(ring)
    f = Poly.zero(ring) if f is None else f
    return MatrixFactorization(PolyMatrix.zeros(ring, 0, 0), PolyMatrix.zeros(ring, 0, 0), f)


def from_delta(delta, parities, f, name=None):
    """Rebuild (A, B) from a full odd endomorphism on a basis with given parities."""
    even = [i for i, p in enumerate(parities) if p == 0]
    odd = [i for i, p in enumerate(parities) if p == 1]
    for i in even:
        for j in even:
            if delta[i, j]:
                raise NotAFactorization("delta has an even-to-even entry")
    for i in odd:
        for j in odd:
            if delta[i, j]:
                raise NotAFactorization("delta has an odd-to-odd entry")
    A = submatrix(delta, even, odd)
    B = submatrix(delta, odd, even)
    return MatrixFactorization(A, B, f, name=name)


# Koszul objects ---------------------------------------------------------------


def exterior_basis(n):
    """Subsets of {0..n-1}: even ones (lexicographic) then odd ones (lexicographic)."""
    subsets = []
    for k in range(n + 1):
        subsets.extend(combinations(range(n), k))
    subsets.sort()
    even = [s for s in subsets if len(s) % 2 == 0]
    odd = [s for s in subsets if len(s) % 2 == 1]
    return even, odd


def wedge_left(i, S):
    """e_i ^ e_S = sign * e_T, returned as (sign, T) or None."""
    if i in S:
        return None
    sign = -1 if sum(1 for s in S if s < i) % 2 else 1
    return sign, tuple(sorted(S + (i,)))


def contract(i, S):
    """e_i^*(e_S) = sign * e_T, returned as (sign, T) or None."""
    if i not in S:
        return None
    sign = -1 if sum(1 for s in S if s < i) % 2 else 1
    return sign, tuple(s for s in S if s != i)


def koszul_mf(xs, ys, name=None):
    """The factorization sum_i x_i e_i^* + y_i e_i of sum_i x_i y_i on the exterior algebra."""
    xs = list(xs)
    ys = list(ys)
    if len(xs) != len(ys) or not xs:
        raise ValueError("koszul_mf needs two sequences of the same positive length")
    ring = xs[0].ring
    n = len(xs)
    even, odd = exterior_basis(n)
    basis = even + odd
    index = {S: k for k, S in enumerate(basis)}
    size = len(basis)
    z = Poly.zero(ring)
    D = [[z] * size for _ in range(size)]
    for col, S in enumerate(basis):
        for i in range(n):
            r = contract(i, S)
            if r is not None:
                sign, T = r
                D[index[T]][col] = D[index[T]][col] + xs[i] * sign
            r = wedge_left(i, S)
            if r is not None:
                sign, T = r
                D[index[T]][col] = D[index[T]][col] + ys[i] * sign
    f = Poly.zero(ring)
    for x, y in zip(xs, ys):
        f = f + x * y
    delta = PolyMatrix(ring, D, size, size)
    return from_delta(delta, [0] * len(even) + [1] * len(odd), f, name=name)


# constructions -----------------------------------------------------------------


def _kron(M, N):
    ring = M.ring
    rows = []
    for i in range(M.rows):
        for k in range(N.rows):
            rows.append([M.entries[i][j] * N.entries[k][l]
                         for j in range(M.cols) for l in range(N.cols)])
    return PolyMatrix(ring, rows, M.rows * N.rows, M.cols * N.cols)


def tensor(X, Y, name=None):
    """X (x) Y in mf(f + g), with delta = delta_X (x) 1 + (-1)^{|x|} 1 (x) delta_Y.

    Basis order: even part X0Y0, X1Y1; odd part X1Y0, X0Y1 (each block in
    row-major order of the factor bases).
    """
    if X.ring != Y.ring:
        raise RingMismatch("tensor factors live over different rings")
    ring = X.ring
    px, py = X.parities, Y.parities
    nx, ny = len(px), len(py)
    dX, dY = X.delta(), Y.delta()
    sign = PolyMatrix(ring, [[(-1) ** px[i] if i == j else 0 for j in range(nx)]
                             for i in range(nx)], nx, nx)
    full = _kron(dX, PolyMatrix.identity(ring, ny)) + _kron(sign, dY)
    # full acts on basis pairs (i, k) at index i*ny + k
    pairs = [(i, k) for i in range(nx) for k in range(ny)]
    order = sorted(range(len(pairs)), key=lambda t: _tensor_rank(pairs[t], px, py))
    parities = [(px[pairs[t][0]] + py[pairs[t][1]]) % 2 for t in order]
    perm = PolyMatrix(ring, [[full.entries[a][b] for b in order] for a in order],
                      len(order), len(order))
    return from_delta(perm, parities, X.f + Y.f, name=name)


def _tensor_rank(pair, px, py):
    i, k = pair
    a, b = px[i], py[k]
    block = {(0, 0): 0, (1, 1): 1, (1, 0): 2, (0, 1): 3}[(a, b)]
    return (block, i, k)


def dual(X, name=None):
    """(P^*, -delta^*): matrix convention (A, B) -> (B^T, -A^T)."""
    return MatrixFactorization(X.B.transpose(), -X.A.transpose(), -X.f, name=name)


def n_twist(Y, name=None):
    """(A, B) -> (A, -B), a factorization of -f."""
    return MatrixFactorization(Y.A, -Y.B, -Y.f, name=name)


def shift(Y, name=None):
    """Parity shift: (A, B) -> (-B, -A)."""
    return MatrixFactorization(-Y.B, -Y.A, Y.f, name=name)


def direct_sum(X, Y, name=None):
    if X.ring != Y.ring:
        raise RingMismatch("summands live over different rings")
    if X.f != Y.f:
        raise PotentialMismatch("summands factor different potentials")
    ring = X.ring
    A = block_matrix(ring, [[X.A, None], [None, Y.A]], [X.p0, Y.p0], [X.p1, Y.p1])
    B = block_matrix(ring, [[X.B, None], [None, Y.B]], [X.p1, Y.p1], [X.p0, Y.p0])
    return MatrixFactorization(A, B, X.f, name=name)


def hom_complex(X, Y):
    """Hom(X, Y) realized as dual(X) (x) Y, an object of mf(Q, 0)."""
    if X.ring != Y.ring:
        raise RingMismatch("objects live over different rings")
    if X.f != Y.f:
        raise PotentialMismatch("objects factor different potentials")
    return tensor(dual(X), Y)
