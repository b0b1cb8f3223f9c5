"""Exact sparse multivariate polynomials over the rationals.

A polynomial lives in a ring given by an ordered tuple of variable names and
stores a dict mapping exponent tuples to nonzero ``Fraction`` coefficients.
Everything here is immutable once built.
"""

from fractions import Fraction
from numbers import Rational
import re

from .errors import ArityMismatch, DimensionMismatch, PolySyntaxError, UnknownVariable


def grevlex_key(exp):
    """Sort key for graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _ring(ring):
    ring = tuple(ring)
    if len(set(ring)) != len(ring):
        raise ValueError(f"repeated variable names in {ring}")
    return ring


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=None):
        self.ring = _ring(ring)
        n = len(self.ring)
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ArityMismatch(f"monomial {exp} in ring of arity {n}")
                c = _as_fraction(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, ring, terms):
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def const(cls, ring, c):
        ring = _ring(ring)
        return cls(ring, {(0,) * len(ring): c})

    @classmethod
    def var(cls, ring, name):
        ring = _ring(ring)
        i = ring.index(name) if isinstance(name, str) else name
        exp = [0] * len(ring)
        exp[i] = 1
        return cls(ring, {tuple(exp): 1})

    @classmethod
    def monomial(cls, ring, exp, c=1):
        return cls(ring, {tuple(exp): c})

    @classmethod
    def gens(cls, ring):
        return [cls.var(ring, name) for name in ring]

    # basic queries --------------------------------------------------------

    @property
    def nvars(self):
        return len(self.ring)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def sorted_terms(self):
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self):
        exp = max(self.terms, key=grevlex_key)
        return exp, self.terms[exp]

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ArityMismatch(f"rings differ: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = _as_fraction(other)
            if not c:
                return Poly._raw(self.ring, {})
            return Poly._raw(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (Fraction(1) / _as_fraction(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == Poly.const(self.ring, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def diff(self, i):
        """Formal partial derivative with respect to variable index ``i``."""
        if isinstance(i, str):
            i = self.ring.index(i)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = c * e[i]
        return Poly._raw(self.ring, out)

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                t *= Fraction(v) ** k
            total += t
        return total

    def mul_monomial(self, exp, c=1):
        c = _as_fraction(c)
        return Poly._raw(self.ring, {tuple(a + b for a, b in zip(e, exp)): v * c
                                     for e, v in self.terms.items()} if c else {})

    def extend(self, ring, positions):
        """Embed into a larger ring; ``positions[i]`` is the new index of variable i."""
        ring = _ring(ring)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(ring)
            for i, k in enumerate(e):
                ne[positions[i]] = k
            out[tuple(ne)] = c
        return Poly._raw(ring, out)

    # rendering --------------------------------------------------------------

    def render(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.ring, exp) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _render_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_render_rational(a)}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Poly({self.render()!r}, ring={self.ring})"


def _render_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_rational(q):
    """Render an exact rational as ``p/q`` (or ``p`` when integral)."""
    return _render_rational(q)


# parser ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # only trailing whitespace left
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()/":
                raise PolySyntaxError(start, f"unexpected character {ch!r}")
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := unary ('*' unary)*
    # unary  := ('+'|'-') unary | power
    # power  := atom ('^' INT)?
    # atom   := INT ('/' INT)? | NAME | '(' expr ')'
    # INT/INT is a rational literal, not division

    def __init__(self, text, ring):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise PolySyntaxError(tok[2], f"expected {kind!r}")
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise PolySyntaxError(0, "empty expression")
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(tok[2], f"unexpected token {tok[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self):
        kind = self.peek()[0]
        if kind in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if kind == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise PolySyntaxError(tok[2], "exponent must be a nonnegative integer")
            self.take()
            p = p ** tok[1]
        return p

    def atom(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den = self.peek()
                if den[0] != "int":
                    raise PolySyntaxError(den[2], "a rational literal needs an integer denominator")
                self.take()
                if den[1] == 0:
                    raise PolySyntaxError(den[2], "zero denominator")
                return Poly.const(self.ring, Fraction(tok[1], den[1]))
            return Poly.const(self.ring, tok[1])
        if kind == "name":
            self.take()
            if tok[1] not in self.ring:
                raise UnknownVariable(tok[1])
            return Poly.var(self.ring, tok[1])
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        if kind == "end":
            raise PolySyntaxError(tok[2], "unexpected end of input")
        raise PolySyntaxError(tok[2], f"unexpected token {tok[1]!r}")


def parse_poly(text, ring):
    """Parse ``text`` (integers, p/q literals, variables, ``+ - * ^ ( )``) into a Poly."""
    return _Parser(str(text), _ring(ring)).parse()


# matrices -------------------------------------------------------------------


class PolyMatrix:
    """Dense matrix of polynomials sharing one ring.  Zero-size matrices are allowed."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, entries, rows=None, cols=None):
        self.ring = _ring(ring)
        entries = [list(r) for r in entries]
        self.rows = len(entries) if rows is None else rows
        if cols is None:
            cols = len(entries[0]) if entries else 0
        self.cols = cols
        if len(entries) != self.rows:
            raise DimensionMismatch("row count does not match entries")
        fixed = []
        for r in entries:
            if len(r) != self.cols:
                raise DimensionMismatch("matrix is not rectangular")
            row = []
            for e in r:
                if isinstance(e, Poly):
                    if e.ring != self.ring:
                        raise ArityMismatch("matrix entries must share the ring")
                    row.append(e)
                elif isinstance(e, str):
                    row.append(parse_poly(e, self.ring))
                else:
                    row.append(Poly.const(self.ring, e))
            fixed.append(row)
        self.entries = fixed

    @classmethod
    def zeros(cls, ring, rows, cols):
        z = Poly.zero(ring)
        return cls(ring, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, ring, n):
        return cls.scalar(ring, n, 1)

    @classmethod
    def scalar(cls, ring, n, value):
        if not isinstance(value, Poly):
            value = Poly.const(ring, value)
        z = Poly.zero(ring)
        return cls(ring, [[value if i == j else z for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def _check_ring(self, other):
        if other.ring != self.ring:
            raise ArityMismatch(f"rings differ: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)]
                                      for r, s in zip(self.entries, other.entries)],
                          self.rows, self.cols)

    def __neg__(self):
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            self._check_ring(other)
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            out = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    acc = Poly.zero(self.ring)
                    for k in range(self.cols):
                        a = self.entries[i][k]
                        if a:
                            b = other.entries[k][j]
                            if b:
                                acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return PolyMatrix(self.ring, out, self.rows, other.cols)
        if isinstance(other, (Poly, int, Rational)):
            return PolyMatrix(self.ring, [[a * other for a in r] for r in self.entries],
                              self.rows, self.cols)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Poly, int, Rational)):
            return self * other
        return NotImplemented

    def transpose(self):
        return PolyMatrix(self.ring, [[self.entries[i][j] for i in range(self.rows)]
                                      for j in range(self.cols)], self.cols, self.rows)

    @property
    def T(self):
        return self.transpose()

    def trace(self):
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        acc = Poly.zero(self.ring)
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def map(self, fn):
        return PolyMatrix(self.ring, [[fn(a) for a in r] for r in self.entries],
                          self.rows, self.cols)

    def is_zero(self):
        return all(not a for r in self.entries for a in r)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, self.shape, tuple(tuple(r) for r in self.entries)))

    def to_strings(self):
        return [[a.render() for a in r] for r in self.entries]

    def __repr__(self):
        return f"PolyMatrix({self.to_strings()})"


def block_matrix(ring, blocks, row_sizes, col_sizes):
    """Assemble a matrix from a grid of blocks; ``None`` blocks are zero."""
    rows = sum(row_sizes)
    cols = sum(col_sizes)
    z = Poly.zero(ring)
    out = [[z] * cols for _ in range(rows)]
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            blk = blocks[bi][bj]
            if blk is not None:
                if blk.shape != (rs, cs):
                    raise DimensionMismatch(f"block ({bi},{bj}) has shape {blk.shape}, want {(rs, cs)}")
                for i in range(rs):
                    for j in range(cs):
                        out[r0 + i][c0 + j] = blk.entries[i][j]
            c0 += cs
        r0 += rs
    return PolyMatrix(ring, out, rows, cols)


def submatrix(M, row_range, col_range):
    r = list(row_range)
    c = list(col_range)
    return PolyMatrix(M.ring, [[M.entries[i][j] for j in c] for i in r], len(r), len(c))


def det(M):
    """Determinant by cofactor expansion (intended for the small matrices used here)."""
    if M.rows != M.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return Poly.const(M.ring, 1)
    if n == 1:
        return M.entries[0][0]
    total = Poly.zero(M.ring)
    for j in range(n):
        a = M.entries[0][j]
        if not a:
            continue
        minor = PolyMatrix(M.ring, [[M.entries[i][k] for k in range(n) if k != j]
                                    for i in range(1, n)], n - 1, n - 1)
        term = a * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
