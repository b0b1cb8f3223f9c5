"""Grothendieck residues of generalized fractions.

A fraction [g dx_1...dx_n / (g_1, ..., g_n)] is evaluated with the
transformation law: write x_i^N = sum_j a_ij g_j, then

    res[g dx / (g_1..g_n)] = res[g det(a) dx / (x_1^N, ..., x_n^N)],

and the right hand side is the coefficient of (x_1...x_n)^{N-1} in g det(a).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ArityMismatch, NotIsolated, NotZeroDimensional, RingMismatch
from .forms import MilnorClass
from .groebner import buchberger
from .polycore import Poly, PolyMatrix, det


def res_monomial(g, a):
    """res[g dx / (x_1^a_1, ..., x_n^a_n)]."""
    a = tuple(a)
    if len(a) != len(g.ring):
        raise ArityMismatch(f"{len(a)} powers for {len(g.ring)} variables")
    if any(k < 1 for k in a):
        raise ValueError("powers must be at least 1")
    return g.coefficient(tuple(k - 1 for k in a))


def _liftings(dens, extra_power=0, order=None):
    """Return N and the matrix a with x_i^N = sum_j a[i][j] dens[j]."""
    ring = dens[0].ring
    n = len(ring)
    order = list(range(n)) if order is None else list(order)
    gb = buchberger([[dens[j]] for j in order], rank=1, ring=ring, track=True)
    minimal = []
    for i in range(n):
        for N in range(1, 65):
            exp = tuple(N if k == i else 0 for k in range(n))
            if gb.contains([Poly.monomial(ring, exp)]):
                minimal.append(N)
                break
        else:
            raise NotZeroDimensional(f"the denominators do not define an isolated point "
                                     f"(no power of {ring[i]} up to 64 in their ideal)")
    N = max(minimal) + extra_power
    rows = []
    for i in range(n):
        exp = tuple(N if k == i else 0 for k in range(n))
        coeffs = gb.lift([Poly.monomial(ring, exp)])
        row = [None] * n
        for slot, j in enumerate(order):
            row[j] = coeffs[slot]
        rows.append(row)
    return N, PolyMatrix(ring, rows, n, n)


def res_general(g, dens, extra_power=0, order=None):
    """res[g dx / (dens)] for any system of parameters ``dens``.

    ``extra_power`` raises the common exponent N and ``order`` permutes the
    generators handed to the Groebner lift; neither changes the answer.
    """
    dens = list(dens)
    if len(dens) != len(g.ring):
        raise ArityMismatch(f"{len(dens)} denominators for {len(g.ring)} variables")
    if any(d.ring != g.ring for d in dens):
        raise RingMismatch("denominators live over a different ring")
    if not g:
        # still validate the denominators
        _liftings(dens)
        return Fraction(0)
    N, a = _liftings(dens, extra_power, order)
    return res_monomial(g * det(a), (N,) * len(dens))


@dataclass(frozen=True)
class GeneralizedFraction:
    numerator: Poly
    denominators: tuple = ()

    def __post_init__(self):
        dens = tuple((d, int(k)) for d, k in self.denominators)
        object.__setattr__(self, "denominators", dens)
        if len(dens) != len(self.numerator.ring):
            raise ArityMismatch("one denominator per variable is required")
        if any(k < 1 for _, k in dens):
            raise ValueError("powers must be at least 1")

    @property
    def ring(self):
        return self.numerator.ring

    def residue(self, **kw):
        return res_general(self.numerator, [d ** k for d, k in self.denominators], **kw)


def residue_pairing(f, w1, w2):
    """<g dx, h dx> = res[g h dx / (f_1, ..., f_n)]."""
    g = w1.rep if isinstance(w1, MilnorClass) else w1
    h = w2.rep if isinstance(w2, MilnorClass) else w2
    partials = [f.diff(i) for i in range(len(f.ring))]
    try:
        return res_general(g * h, partials)
    except NotZeroDimensional as exc:
        raise NotIsolated(f"{f.render()} does not have an isolated critical point") from exc


def _product_ring(r1, r2):
    if set(r1) & set(r2):
        raise RingMismatch("the two fractions share variables")
    return tuple(r1) + tuple(r2)


def kunneth_residue_check(w1, w2):
    """Compare the residue of an external product with the product of residues.

    The external product of [g' dx'/(f')] and [g'' dx''/(f'')] moves the m-form
    dx' past the degree-n local cohomology class of the second factor, so it
    equals (-1)^{mn} [g' g'' dx' dx'' / (f', f'')].  Returns (lhs, rhs) with
    lhs computed by one Groebner computation over the product ring and rhs =
    (-1)^{mn} res(w1) res(w2) from the factors.
    """
    m, n = len(w1.ring), len(w2.ring)
    sign = -1 if (m * n) % 2 else 1
    r1 = w1.residue() if m else Fraction(w1.numerator.constant_term())
    r2 = w2.residue() if n else Fraction(w2.numerator.constant_term())
    rhs = sign * r1 * r2
    if m == 0 or n == 0:
        return r1 * r2, rhs
    ring = _product_ring(w1.ring, w2.ring)
    left = list(range(m))
    right = list(range(m, m + n))
    num = w1.numerator.extend(ring, left) * w2.numerator.extend(ring, right)
    dens = [d.extend(ring, left) ** k for d, k in w1.denominators]
    dens += [d.extend(ring, right) ** k for d, k in w2.denominators]
    lhs = sign * res_general(num, dens)
    return lhs, rhs


# one-variable Cech model -------------------------------------------------------------


@dataclass(frozen=True)
class Cech1Var:
    """Class of (p(x) + alpha * sum_j c_j / x^j) dx; only the singular part survives."""

    polynomial: Poly
    singular: dict = field(default_factory=dict)

    def residue(self):
        """res of the class: alpha / x^j dx pairs to 1 exactly when j = 1."""
        ring = self.polynomial.ring
        one = Poly.const(ring, 1)
        return sum((c * res_monomial(one, (j,)) for j, c in self.singular.items()), Fraction(0))

    def render(self):
        if not self.singular:
            return "0"
        parts = []
        for j in sorted(self.singular):
            parts.append(f"{self.singular[j]}*alpha/x^{j}")
        return "(" + " + ".join(parts) + ")*dx"


def cech_1var_reduce(terms, ring=("x",)):
    """Reduce sum c_e x^e dx, with negative e meaning alpha / x^{-e}.

    ``terms`` maps integer exponents to coefficients.  The polynomial part is a
    coboundary and is dropped from the class, but kept on the result for
    inspection.
    """
    ring = tuple(ring)
    if len(ring) != 1:
        raise ArityMismatch("the Cech model is one-variable")
    poly = Poly.zero(ring)
    singular = {}
    for e, c in terms.items():
        c = Fraction(c)
        if not c:
            continue
        if e >= 0:
            poly = poly + Poly.monomial(ring, (e,), c)
        else:
            singular[-e] = singular.get(-e, Fraction(0)) + c
            if not singular[-e]:
                del singular[-e]
    return Cech1Var(poly, singular)
