"""Exact computations with matrix factorizations: Groebner homology, Chern
characters, Grothendieck residues and Hochschild chains."""

from .errors import MFHRRError
from .forms import DiffForm, MilnorClass, chern, hkr_epsilon, milnor_reduce, wedge
from .groebner import buchberger, lift, normal_form, syzygies
from .homology import (euler_chi, stabilized_oracle, theta, truncated_oracle,
                       z2_homology_dims)
from .mfcat import (MatrixFactorization, direct_sum, dual, hom_complex, koszul_mf,
                    mf_from_strings, n_twist, shift, tensor)
from .polycore import Poly, PolyMatrix, parse_poly
from .residue import res_general, res_monomial, residue_pairing

__version__ = "0.1.0"

__all__ = [
    "MFHRRError", "DiffForm", "MilnorClass", "chern", "hkr_epsilon", "milnor_reduce", "wedge",
    "buchberger", "lift", "normal_form", "syzygies", "euler_chi", "stabilized_oracle", "theta",
    "truncated_oracle", "z2_homology_dims", "MatrixFactorization", "direct_sum", "dual",
    "hom_complex", "koszul_mf", "mf_from_strings", "n_twist", "shift", "tensor", "Poly",
    "PolyMatrix", "parse_poly", "res_general", "res_monomial", "residue_pairing",
]
