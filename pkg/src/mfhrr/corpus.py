"""Built-in corpus of matrix factorizations and the HRR comparison on it.

For X, Y in mf(Q, f) with n variables the two sides compared are

    chi(X, Y) = dim H0 Hom(X, Y) - dim H1 Hom(X, Y)      (Groebner homology)
    (-1)^{n choose 2} <ch X, ch Y>                        (forms + residues)
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .forms import chern
from .homology import stabilized_oracle, theta, z2_homology_dims
from .mfcat import direct_sum, hom_complex, koszul_mf, mf_from_strings, n_twist, tensor
from .polycore import Poly, parse_poly
from .residue import residue_pairing


@dataclass
class CorpusEntry:
    name: str
    ring: tuple
    f: Poly
    mfs: dict = field(default_factory=dict)


def _entry(name, ring, f):
    ring = tuple(ring)
    return CorpusEntry(name, ring, parse_poly(f, ring))


def build_corpus():
    entries = []

    e = _entry("xy", ("x", "y"), "x*y")
    X1 = mf_from_strings(e.ring, e.f, [["x"]], [["y"]], name="(x,y)")
    X2 = mf_from_strings(e.ring, e.f, [["y"]], [["x"]], name="(y,x)")
    e.mfs = {"(x,y)": X1, "(y,x)": X2, "(x,y)+(y,x)": direct_sum(X1, X2, name="(x,y)+(y,x)")}
    entries.append(e)

    e = _entry("quadric", ("x", "y"), "x^2+y^2")
    x, y = Poly.gens(e.ring)
    e.mfs = {"koszul": koszul_mf([x, y], [x, y], name="koszul")}
    entries.append(e)

    e = _entry("fermat3", ("x", "y"), "x^3+y^3")
    x, y = Poly.gens(e.ring)
    e.mfs = {
        "(x+y,q)": mf_from_strings(e.ring, e.f, [["x+y"]], [["x^2-x*y+y^2"]], name="(x+y,q)"),
        "(q,x+y)": mf_from_strings(e.ring, e.f, [["x^2-x*y+y^2"]], [["x+y"]], name="(q,x+y)"),
        "koszul": koszul_mf([x, y], [x * x, y * y], name="koszul"),
    }
    entries.append(e)

    e = _entry("fermat4", ("x", "y"), "x^4+y^4")
    x, y = Poly.gens(e.ring)
    e.mfs = {
        "koszul(x,y)": koszul_mf([x, y], [x ** 3, y ** 3], name="koszul(x,y)"),
        "koszul(x2,y)": koszul_mf([x * x, y], [x * x, y ** 3], name="koszul(x2,y)"),
    }
    entries.append(e)

    e = _entry("koszul4", ("x1", "x2", "y1", "y2"), "x1*y1+x2*y2")
    x1, x2, y1, y2 = Poly.gens(e.ring)
    e.mfs = {"koszul": koszul_mf([x1, x2], [y1, y2], name="koszul")}
    entries.append(e)
    return entries


def corpus_entries(pattern=None):
    return [e for e in build_corpus() if pattern is None or pattern in e.name]


def q(value):
    """Exact rational as a "p/q" (or integer) string."""
    return str(Fraction(value))


def hrr_case(X, Y, oracle=False, timings=False):
    """Both sides of the HRR identity for a pair of factorizations of one potential."""
    n = X.nvars
    t0 = time.perf_counter()
    C = hom_complex(X, Y)
    dims = z2_homology_dims(C)
    t1 = time.perf_counter()
    chX, chY = chern(X), chern(Y)
    pairing = residue_pairing(X.f, chX, chY)
    t2 = time.perf_counter()
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    chi = dims.euler
    th = theta(X, n_twist(Y))
    twist = -1 if (n // 2) % 2 else 1
    out = {
        "n": n,
        "f": X.f.render(),
        "h0": dims.h0,
        "h1": dims.h1,
        "chi": chi,
        "ch_X": chX.render(),
        "ch_Y": chY.render(),
        "pairing": q(pairing),
        "sign": sign,
        "rhs": q(sign * pairing),
        "verdict": "holds" if Fraction(chi) == sign * pairing else "fails",
        "theta_X_NY": th,
        "theta_relation": "holds" if th == twist * chi else "fails",
    }
    if oracle:
        odims, N = stabilized_oracle(C)
        T = tensor(X, n_twist(Y))
        tdims, TN = stabilized_oracle(T)
        out["oracle"] = {"hom": [odims.h0, odims.h1], "hom_N": N,
                         "tensor": [tdims.h0, tdims.h1], "tensor_N": TN,
                         "agrees": odims == dims and tdims == z2_homology_dims(T)}
    if timings:
        out["seconds"] = {"homology": round(t1 - t0, 4), "chern_pairing": round(t2 - t1, 4)}
    return out


def _run_case(args):
    entry_name, xname, yname, oracle, timings = args
    entry = next(e for e in build_corpus() if e.name == entry_name)
    res = hrr_case(entry.mfs[xname], entry.mfs[yname], oracle=oracle, timings=timings)
    return {"case": f"{entry_name}:{xname}|{yname}", "entry": entry_name, "X": xname,
            "Y": yname, **res}


def thread_cap(default=1):
    raw = os.environ.get("MFHRR_THREADS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def corpus_report(pattern=None, oracle=False, timings=False, threads=None):
    jobs = []
    for e in corpus_entries(pattern):
        for xname in e.mfs:
            for yname in e.mfs:
                jobs.append((e.name, xname, yname, oracle, timings))
    threads = thread_cap() if threads is None else threads
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            cases = list(pool.map(_run_case, jobs))
    else:
        cases = [_run_case(j) for j in jobs]
    cases.sort(key=lambda c: c["case"])
    failed = [c["case"] for c in cases if c["verdict"] != "holds"]
    if oracle:
        failed += [c["case"] + " (oracle)" for c in cases if not c["oracle"]["agrees"]]
    return {"cases": cases,
            "summary": {"total": len(cases),
                        "holds": sum(c["verdict"] == "holds" for c in cases),
                        "failed": failed}}
