"""
Groebner homology against brute-force linear algebra
====================================================

The oracle never uses a Groebner basis: it grades the complex, truncates at
degree N and counts kernels and images with exact integer elimination.  N is
doubled until the answer stops moving.
"""

from mfhrr import hom_complex, n_twist, stabilized_oracle, tensor, z2_homology_dims
from mfhrr.corpus import build_corpus

for entry in build_corpus():
    for xname, X in entry.mfs.items():
        for yname, Y in entry.mfs.items():
            for label, C in (("Hom", hom_complex(X, Y)), ("tensor", tensor(X, n_twist(Y)))):
                fast = z2_homology_dims(C)
                slow, N = stabilized_oracle(C)
                mark = "ok" if fast == slow else "MISMATCH"
                print(f"{entry.name:8s} {label:6s} {xname:>12s} | {yname:12s} "
                      f"({fast.h0},{fast.h1}) vs ({slow.h0},{slow.h1}) at N={N}  {mark}")
