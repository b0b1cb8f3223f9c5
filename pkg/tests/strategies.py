"""Hypothesis strategies for polynomials and forms over a fixed ring."""

from fractions import Fraction

from hypothesis import strategies as st

from mfhrr.forms import DiffForm
from mfhrr.polycore import Poly

RING = ("x", "y")

coeffs = st.builds(Fraction, st.integers(-5, 5).filter(bool), st.sampled_from([1, 1, 2, 3]))
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))


@st.composite
def polys(draw, ring=RING, max_terms=4):
    n = len(ring)
    e = st.tuples(*[st.integers(0, 3)] * n)
    terms = draw(st.dictionaries(e, coeffs, max_size=max_terms))
    return Poly(ring, terms)


@st.composite
def forms(draw, degree=None, ring=RING):
    n = len(ring)
    subsets = [S for k in range(n + 1) for S in _subsets(n, k)]
    if degree is not None:
        subsets = [S for S in subsets if len(S) == degree]
    comps = draw(st.dictionaries(st.sampled_from(subsets), polys(ring, 3), max_size=3))
    return DiffForm(ring, comps)


def _subsets(n, k):
    from itertools import combinations
    return list(combinations(range(n), k))
