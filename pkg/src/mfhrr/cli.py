"""Command line front end.

    mfhrr residue --vars x,y --num 1 --dens y,x
    mfhrr chern X.json
    mfhrr chi X.json Y.json
    mfhrr pairing X.json Y.json
    mfhrr hrr-verify X.json [Y.json]
    mfhrr corpus [--filter fermat] [--format csv] [--oracle]
    mfhrr selftest [--seed 42 --len 4 --cases 20] [thm112 --jmax 5]
    mfhrr thm112 --jmax 5

A factorization argument is a JSON file {"ring", "f", "A", "B"} or a corpus
reference ``corpus:<entry>:<name>``, e.g. ``corpus:xy:(x,y)``.

Exit codes: 0 ok, 1 bad input, 2 not zero-dimensional, 3 identity or check
failed, 4 odd number of variables, 5 any other domain error.
"""

import argparse
import csv
import io
import json
import sys
import time

from .checks import SUITES, run_suites
from .corpus import build_corpus, corpus_report, hrr_case, q
from .errors import (MFHRRError, NotIsolated, NotZeroDimensional, OddDimension, PolySyntaxError,
                     UnknownVariable)
from .forms import chern
from .homology import z2_homology_dims
from .mfcat import MatrixFactorization, hom_complex
from .polycore import parse_poly
from .residue import res_general, residue_pairing

EXIT_INPUT, EXIT_NOT_ZERO_DIM, EXIT_IDENTITY, EXIT_ODD, EXIT_OTHER = 1, 2, 3, 4, 5


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def load_mf(ref):
    if ref.startswith("corpus:"):
        parts = ref.split(":", 2)
        if len(parts) != 3:
            raise InputError(f"corpus references look like corpus:<entry>:<name>, got {ref!r}")
        for e in build_corpus():
            if e.name == parts[1] and parts[2] in e.mfs:
                return e.mfs[parts[2]]
        raise InputError(f"no corpus factorization {ref!r}")
    try:
        with open(ref, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {ref}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{ref} is not valid JSON: {exc}") from exc
    try:
        return MatrixFactorization.from_json(data)
    except KeyError as exc:
        raise InputError(f"{ref} is missing the field {exc}") from exc


# subcommands ------------------------------------------------------------------------------


def cmd_residue(args):
    ring = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    if not ring:
        raise InputError("--vars needs at least one variable")
    num = parse_poly(args.num, ring)
    dens = [parse_poly(d, ring) for d in args.dens.split(",")]
    print(q(res_general(num, dens)))
    return 0


def cmd_chern(args):
    X = load_mf(args.mf)
    ch = chern(X)
    if args.json:
        print(_dump({"f": X.f.render(), "ch": ch.render(), "rep": ch.rep.render()}))
    else:
        print(ch.render())
    return 0


def cmd_chi(args):
    X, Y = load_mf(args.x), load_mf(args.y)
    dims = z2_homology_dims(hom_complex(X, Y))
    if args.json:
        print(_dump({"h0": dims.h0, "h1": dims.h1, "chi": dims.euler}))
    else:
        print(dims.euler)
    return 0


def cmd_pairing(args):
    X, Y = load_mf(args.x), load_mf(args.y)
    print(q(residue_pairing(X.f, chern(X), chern(Y))))
    return 0


def cmd_hrr_verify(args):
    X = load_mf(args.x)
    Y = load_mf(args.y) if args.y else X
    report = hrr_case(X, Y, oracle=args.oracle, timings=args.timings)
    print(_dump(report))
    ok = report["verdict"] == "holds" and (not args.oracle or report["oracle"]["agrees"])
    return 0 if ok else EXIT_IDENTITY


def cmd_corpus(args):
    report = corpus_report(args.filter, oracle=args.oracle, timings=args.timings)
    if args.format == "csv":
        buf = io.StringIO()
        cols = ["case", "n", "h0", "h1", "chi", "pairing", "sign", "rhs", "verdict",
                "theta_X_NY", "ch_X", "ch_Y"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for c in report["cases"]:
            w.writerow([c[k] for k in cols])
        sys.stdout.write(buf.getvalue())
    else:
        print(_dump(report))
    s = report["summary"]
    print(f"{s['holds']}/{s['total']} cases hold", file=sys.stderr)
    return EXIT_IDENTITY if s["failed"] else 0


def cmd_thm112(args):
    from .hochschild import thm112_verify
    try:
        report = thm112_verify(args.jmax)
    except AssertionError as exc:
        print(f"thm112 FAILED: {exc}")
        return EXIT_IDENTITY
    for case in report["cases"]:
        print(f"j={case['j']}: eps(y^j) = {case['eps']}  res = {case['res']}  "
              f"trace = {case['trace']}")
    print(f"thm112 pass (j = 0..{args.jmax}, str(e e*) = {report['str_e_estar']})")
    return 0


def cmd_selftest(args):
    if args.target == "thm112":
        return cmd_thm112(args)
    names = None if args.target == "all" else [args.target]
    if names and names[0] not in SUITES:
        raise InputError(f"unknown suite {args.target!r}; choose from all, thm112, "
                         + ", ".join(SUITES))
    start = time.perf_counter()
    counts, failure = run_suites(args.seed, args.len, args.cases, names)
    for name in names or SUITES:
        if name in counts:
            print(f"{name:28s} {counts[name]:4d} ok")
    if failure:
        name, case, msg = failure
        print(f"FAIL {name} case {case}: {msg}")
        print(f"reproduce: mfhrr selftest {name} --seed {args.seed} --len {args.len} "
              f"--cases {case + 1}")
        return EXIT_IDENTITY
    if names is None:
        rc = cmd_thm112(args)
        if rc:
            return rc
    if args.timings:
        print(f"elapsed {time.perf_counter() - start:.2f}s")
    print(f"selftest pass: {sum(counts.values())} cases, seed {args.seed}")
    return 0


# entry point ----------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="mfhrr", description="Matrix factorizations, residues and the HRR identity.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("residue", help="Grothendieck residue of a generalized fraction")
    r.add_argument("--vars", required=True, help="comma separated variable names")
    r.add_argument("--num", required=True, help="numerator polynomial")
    r.add_argument("--dens", required=True, help="comma separated denominators")
    r.set_defaults(func=cmd_residue)

    c = sub.add_parser("chern", help="Chern character in the Milnor algebra")
    c.add_argument("mf")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_chern)

    c = sub.add_parser("chi", help="Euler pairing via Groebner homology")
    c.add_argument("x")
    c.add_argument("y")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_chi)

    c = sub.add_parser("pairing", help="residue pairing of Chern characters")
    c.add_argument("x")
    c.add_argument("y")
    c.set_defaults(func=cmd_pairing)

    c = sub.add_parser("hrr-verify", help="compare both sides of the HRR identity")
    c.add_argument("x")
    c.add_argument("y", nargs="?")
    c.add_argument("--oracle", action="store_true", help="also run the linear-algebra oracle")
    c.add_argument("--timings", action="store_true")
    c.set_defaults(func=cmd_hrr_verify)

    c = sub.add_parser("corpus", help="run the built-in corpus")
    c.add_argument("--filter", default=None, help="substring of entry names")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--oracle", action="store_true")
    c.add_argument("--timings", action="store_true")
    c.set_defaults(func=cmd_corpus)

    c = sub.add_parser("selftest", help="randomized property suites and the one-variable check")
    c.add_argument("target", nargs="?", default="all", help="all, thm112 or a suite name")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--len", type=int, default=4, help="maximal word length")
    c.add_argument("--cases", type=int, default=20)
    c.add_argument("--jmax", type=int, default=5)
    c.add_argument("--timings", action="store_true")
    c.set_defaults(func=cmd_selftest)

    c = sub.add_parser("thm112", help="trace = -residue in the one-variable model")
    c.add_argument("--jmax", type=int, default=5)
    c.set_defaults(func=cmd_thm112)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, UnknownVariable, PolySyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotZeroDimensional, NotIsolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ZERO_DIM
    except OddDimension as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ODD
    except MFHRRError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
