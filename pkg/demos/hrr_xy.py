"""
Euler pairing against the residue pairing for f = xy
====================================================

Both numbers are computed by unrelated machinery: the left one by Groebner
homology of the Hom complex, the right one from Chern characters and a
Grothendieck residue.
"""

from mfhrr import Poly, PolyMatrix, chern, hom_complex, residue_pairing, z2_homology_dims
from mfhrr.mfcat import mf_new

ring = ("x", "y")
x, y = Poly.gens(ring)

# the rank one factorization x * y = f
X = mf_new(PolyMatrix(ring, [[x]]), PolyMatrix(ring, [[y]]), x * y)

# Hom(X, X) is a Z/2-folded complex of free modules; its homology is finite
dims = z2_homology_dims(hom_complex(X, X))
print("H0, H1 of Hom(X, X):", dims.h0, dims.h1)

# ch(X) lives in the Milnor algebra Q/(y, x), which is just k
ch = chern(X)
print("ch(X) =", ch.render())

pairing = residue_pairing(X.f, ch, ch)
sign = -1  # (-1)^(2 choose 2)
print("chi =", dims.euler, " sign * <ch, ch> =", sign * pairing)
