"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 solver
non-convergence.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
import warnings

from . import __version__
from . import io as jio
from .decomposition import verify
from .dr import (dr_lower_bound, dr_search, witness_library,
                 WITNESS_NAMES)
from .ellipsoid import mvee_centered, mvee_general
from .errors import CertificateError, InvalidQuery, IsodiamError, MaxIterations
from .polytope import iq, iwq
from .positions import behrend_normalize, isominwidth_normalize

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2, 3

SCHEMAS = """\
JSON formats (numbers are IEEE doubles, written as shortest round-trip decimals):
  polytope       {"dim": n, "vertices": [[x1, ..., xn], ...]}
  points         polytope format, {"dim": n, "points": [...]} or a bare list
  decomposition  {"dim": n, "directions": [[u1, ..., un], ...], "weights": [w, ...]}
                 directions are unit vectors; "residual" is ignored on input
  witness        decomposition + {"value": v, "subset": [i, ...], "name": s}
  certificate    {"kind", "map", "det", "quotient_before", "quotient_after",
                  "decomposition", "residual", "tolerance", "certified"}

Body arguments that do not exist as files are looked up by name in the
fixture directory (ISODIAM_FIXTURES, else the bundled fixtures), e.g.
"crosspolytope3" or "septagon_0.01".

Exit codes: 0 success, 1 verification failure, 2 input error,
3 solver non-convergence.
"""


def fmt(x):
    return f"{x:.12g}"


class Run:
    """Collects the pieces of a run report."""

    def __init__(self, argv):
        self.argv = list(argv)
        self.digest = None
        self.outputs = {}
        self.t0 = time.perf_counter()

    def load(self, path):
        data, self.digest = jio.read_input(jio.resolve_input(path))
        return data

    def report(self):
        return {"command": ["isodiam", *self.argv], "input_digest": self.digest,
                "outputs": self.outputs,
                "timings": {"total_s": round(time.perf_counter() - self.t0, 6)},
                "version": __version__}


def _quotient(func):
    def run(args, r):
        value = func(jio.polytope_from_dict(r.load(args.body)))
        r.outputs["value"] = value
        print(fmt(value))
        return EXIT_OK
    return run


def _normalize(func):
    def run(args, r):
        P = jio.polytope_from_dict(r.load(args.body))
        A, body, cert = func(P, eps=args.eps)
        result = {"quotient_before": cert.quotient_before,
                  "quotient_after": cert.quotient_after,
                  "residual": cert.residual, "certified": cert.certified}
        r.outputs.update(result)
        if args.out:
            jio.write_json(jio.polytope_to_dict(body), args.out)
        else:
            result["body"] = jio.polytope_to_dict(body)
        if args.cert:
            jio.write_json(jio.certificate_to_dict(cert), args.cert)
        jio.write_json(result, "-")
        return EXIT_OK
    return run


def cmd_mvee(args, r):
    X = jio.points_from_dict(r.load(args.points))
    solve = mvee_centered if args.centered else mvee_general
    E, contact = solve(X, eps=args.eps)
    out = {"ellipsoid": jio.ellipsoid_to_dict(E),
           "volume": E.volume, "contacts": jio.contact_to_dict(contact)}
    r.outputs.update(volume=E.volume, residual=contact.residual)
    jio.write_json(out, "-")
    return EXIT_OK


def cmd_check(args, r):
    D = jio.decomposition_from_dict(r.load(args.decomposition))
    rep = verify(D.directions, D.weights, args.tol)
    r.outputs.update(residual=rep.residual, trace_deviation=rep.trace_deviation,
                     passed=rep.passed)
    print(f"residual {fmt(rep.residual)}  trace deviation {fmt(rep.trace_deviation)}  "
          f"{'OK' if rep.passed else 'FAIL'} (tol {args.tol:g})")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_dr_bound(args, r):
    value = dr_lower_bound(args.m, args.n, args.j)
    r.outputs["value"] = value
    print(fmt(value))
    return EXIT_OK


def cmd_dr_table(args, r):
    n = args.n
    if n < 1:
        raise InvalidQuery(f"need n >= 1, got {n}")
    rows = []
    print(f"{'m':>3} {'j':>3}  {'DR lower bound':>16}")
    for m in range(n, math.comb(n + 1, 2) + 1):
        for j in range(1, n + 1):
            value = dr_lower_bound(m, n, j)
            rows.append([m, n, j, value])
            print(f"{m:>3} {j:>3}  {fmt(value):>16}")
    r.outputs["table"] = rows
    return EXIT_OK


def cmd_dr_search(args, r):
    W = dr_search(args.m, args.n, args.seed, restarts=args.restarts,
                  iters=args.iters, threads=args.threads)
    r.outputs.update(value=W.value, residual=W.decomposition.residual)
    jio.write_json(jio.witness_to_dict(W), "-")
    return EXIT_OK


def cmd_witness(args, r):
    W = witness_library(args.name)
    r.outputs.update(value=W.value)
    jio.write_json(jio.witness_to_dict(W), "-")
    return EXIT_OK


def cmd_verify(args, r):
    from .acceptance import run_all
    select = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_all(select)
    r.outputs["criteria"] = {str(k): v for k, v in results.items()}
    passed = sum(results.values())
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="isodiam", description="Isodiametric and isominwidth positions of polytopes.",
        epilog=SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"isodiam {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_, epilog=SCHEMAS,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        p.add_argument("--report", metavar="FILE",
                       help="write a JSON run report (command, input digest, "
                            "outputs, timings, version)")
        return p

    add("iq", _quotient(iq), "print the isodiametric quotient vol/D^n"
        ).add_argument("body", help="polytope JSON file or fixture name")
    add("iwq", _quotient(iwq), "print the isominwidth quotient vol/w^n"
        ).add_argument("body", help="polytope JSON file or fixture name")
    for name, label, func in (("behrend", "Behrend", behrend_normalize),
                              ("isominwidth", "isominwidth", isominwidth_normalize)):
        p = add(name, _normalize(func), f"map a polytope into {label} position")
        p.add_argument("body", help="polytope JSON file or fixture name")
        p.add_argument("--eps", type=float, default=1e-8, help="ellipsoid solver tolerance")
        p.add_argument("--out", help="write the normalised polytope here")
        p.add_argument("--cert", help="write the certificate here")

    p = add("mvee", cmd_mvee, "minimum-volume enclosing ellipsoid and contact weights")
    p.add_argument("points", help="points JSON file")
    p.add_argument("--centered", action="store_true",
                   help="origin-centred ellipsoid of a symmetric point set")
    p.add_argument("--eps", type=float, default=1e-8, help="solver tolerance")

    p = add("check-decomposition", cmd_check,
            "verify sum w_i u_i u_i^T = I (exit 1 if the residual exceeds --tol)")
    p.add_argument("decomposition", nargs="?", default="-",
                   help="decomposition JSON file (default: stdin)")
    p.add_argument("--tol", type=float, default=1e-9)

    p = add("dr-bound", cmd_dr_bound, "Cauchy-Binet lower bound on DR(m, n, j)")
    for flag in ("--m", "--n", "--j"):
        p.add_argument(flag, type=int, required=True)

    add("dr-table", cmd_dr_table, "DR lower bounds for all valid m and j"
        ).add_argument("--n", type=int, required=True)

    p = add("dr-search", cmd_dr_search,
            "annealing search for small-volume decompositions (upper bound on DR(m, n, n))")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--iters", type=int, default=5000)
    p.add_argument("--threads", type=int, default=1)

    add("witness", cmd_witness, "print a stored decomposition with its largest simplex"
        ).add_argument("name", help=", ".join(WITNESS_NAMES))

    add("verify-paper", cmd_verify, "run the acceptance suite"
        ).add_argument("--only", help="comma-separated criterion numbers")
    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    run = Run(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = args.func(args, run)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except MaxIterations as exc:
        print(f"error: solver did not converge: {exc}", file=sys.stderr)
        code = EXIT_SOLVER
    except CertificateError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        code = EXIT_FAIL
    except (IsodiamError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        code = EXIT_INPUT
    run.outputs["exit_code"] = code
    if args.report:
        jio.write_json(run.report(), args.report)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
