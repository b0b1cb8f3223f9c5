"""
Trace against residue in one variable
=====================================

K is the Koszul complex of x over k[x].  Powers y^j of the Hochschild class
of e* are pushed into End(K), sent to forms with the HKR map and reduced in
the Cech model alpha / x^k dx.  The residue of that class is minus the trace.
"""

from mfhrr.hochschild import thm112_verify

report = thm112_verify(6)
print("str(e e*) =", report["str_e_estar"])
for case in report["cases"]:
    print(f"j={case['j']}  eps(y^j) = {case['eps']:28s} res = {case['res']:>3s}  "
          f"trace = {case['trace']}")
