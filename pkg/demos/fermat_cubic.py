"""
The Fermat cubic x^3 + y^3
==========================

x^3 + y^3 = (x + y)(x^2 - xy + y^2) gives a rank one factorization over Q.
Its Chern character is not a constant, so the pairing exercises a real
residue computation in the four dimensional Milnor algebra.
"""

from mfhrr import chern, euler_chi, parse_poly, residue_pairing
from mfhrr.forms import milnor_basis
from mfhrr.mfcat import mf_from_strings

ring = ("x", "y")
f = parse_poly("x^3+y^3", ring)
X = mf_from_strings(ring, f, [["x+y"]], [["x^2-x*y+y^2"]])

print("Milnor algebra basis:", [m.render() for m in milnor_basis(f)])
ch = chern(X)
print("ch(X) =", ch.render())

# <ch, ch> = res[(3y - 3x)^2 dx dy / (3x^2, 3y^2)]; only the xy coefficient survives
p = residue_pairing(f, ch, ch)
print("<ch, ch> =", p)

# the homology side, computed independently
print("chi(X, X) =", euler_chi(X, X), "  expected", -p)
