"""Command-line entry point.

Exit codes: 0 ok, 1 negative verdict (a set is not power-free or a
certificate failed verification), 2 usage, 3 capacity, 4 budget, 5 threshold
not met, 6 formula not applicable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys

from . import bounds as bnd
from . import construction, davenport, solver
from ._config import env_int
from .errors import CapacityError, InvalidArgument, PowerFreeError, ThresholdNotMet
from .expvec import VectorMultiset, find_zero_sum
from .primes import build_table, integer_root, pi

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

# the 2^d p_d default sieve limit is skipped above this size
DEFAULT_SIEVE_CEILING = 10**6

log = logging.getLogger("powerfree")


def _d_arg(text):
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if d < 2:
        raise argparse.ArgumentTypeError(f"d must be >= 2, got {d}")
    return d


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _n_range(text):
    """``"14"`` or ``"10..16"``."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        lo, hi = _positive(lo), _positive(hi)
        if lo > hi:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return lo, hi
    n = _positive(text)
    return n, n


def _add_common(p, default_format="text"):
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--format", choices=("text", "json", "csv"), default=None)
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    p.set_defaults(format=default_format)
    p.add_argument("--sieve-limit", type=_positive, default=None)
    p.add_argument("--budget", type=_positive, default=None, help="node budget (env POWERFREE_BUDGET)")
    p.add_argument("--threads", type=_positive, default=None, help="worker threads (env POWERFREE_THREADS)")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="powerfree",
        description="Subsets of [N] with no product of distinct elements equal to a d-th power.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="main term and upper bounds for rho_d(N)")
    p.add_argument("-d", type=_d_arg, required=True)
    p.add_argument("-N", type=_positive, required=True)
    _add_common(p)

    p = sub.add_parser("rho", help="exact rho_d(N) by branch and bound")
    p.add_argument("-d", type=_d_arg, required=True)
    p.add_argument("-N", type=_n_range, required=True, help="N or lo..hi")
    p.add_argument("--force", action="store_true", help="ignore the desk-scale size guard")
    _add_common(p)

    p = sub.add_parser("construct", help="emit the explicit extremal set as a certificate")
    p.add_argument("-d", type=_d_arg, required=True)
    p.add_argument("-N", type=_positive, required=True)
    p.add_argument("--verify", action="store_true")
    _add_common(p, default_format="json")

    p = sub.add_parser("verify", help="check a list of integers for a d-th power product")
    p.add_argument("-d", type=_d_arg, required=True)
    p.add_argument("file", help="one integer per line, '#' comments allowed; '-' for stdin")
    _add_common(p)

    p = sub.add_parser("davenport", help="Davenport constant of a finite abelian group")
    p.add_argument("spec", help='cyclic orders, e.g. "3^2", "2,4"')
    which = p.add_mutually_exclusive_group()
    which.add_argument("--exact", dest="mode", action="store_const", const="exact")
    which.add_argument("--olson", dest="mode", action="store_const", const="olson")
    which.add_argument("--bound", dest="mode", action="store_const", const="bound")
    _add_common(p)

    p = sub.add_parser("primes", help="primes up to N and pi(N)")
    p.add_argument("-N", type=_positive, required=True)
    p.add_argument("--nth", type=_positive, default=None, help="also print the k-th prime")
    _add_common(p)
    return parser


def _emit(args, rows, text_lines=None, doc=None, out=None):
    out = out or sys.stdout
    if args.format == "json":
        out.write(json.dumps(rows if doc is None else doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        rows = rows if isinstance(rows, list) else [rows]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in row.items()})
        out.write(buf.getvalue())
    else:
        out.write("\n".join(text_lines) + "\n")


def _table_for(args, *needed, d=None):
    """Sieve up to the flag value, else max(needed, 2^d p_d) when that fits."""
    if args.sieve_limit is not None:
        limit = args.sieve_limit
    else:
        limit = max(2, *needed)
        if d is not None:
            t = bnd.threshold(d)
            if t <= DEFAULT_SIEVE_CEILING:
                limit = max(limit, t)
    for n in needed:
        if n > limit:
            raise CapacityError(f"--sieve-limit {limit} is below the required {n}")
    return build_table(limit)


def _budget(args):
    return args.budget if args.budget is not None else env_int("POWERFREE_BUDGET", solver.DEFAULT_BUDGET)


def _threads(args):
    return args.threads if args.threads is not None else env_int("POWERFREE_THREADS", 1)


def cmd_bounds(args):
    d, N = args.d, args.N
    table = _table_for(args, N, d=d)
    rep = bnd.bound_report(d, N, table)
    row = rep.as_dict()
    row["warnings"] = list(rep.warnings)
    lines = [
        f"d = {d}, N = {N}",
        f"main term           {rep.main_term}",
        f"thm4 upper          {rep.thm4_upper}" + (" (bound-of-a-bound)" if rep.davenport_is_bound else ""),
        f"thm5 upper          {rep.thm5_upper}" + (" (bound-of-a-bound)" if rep.davenport_is_bound else ""),
        f"thm5 upper (d(D-1)) {rep.thm5_upper_tight}",
        f"corollary printed   {rep.corollary_upper} ({rep.corollary_upper_real:.4f})",
        f"corollary derived   {rep.corollary_derived} ({rep.corollary_derived_real:.4f})",
        f"threshold 2^d p_d   {rep.threshold}",
    ]
    if rep.exact_claimed is not None:
        lines.append(f"exact value         {rep.exact_claimed}")
    lines += [f"warning: {w}" for w in rep.warnings]
    if args.format == "csv":
        row["warnings"] = " | ".join(rep.warnings)
    doc = {k: v for k, v in row.items() if not (k == "exact_claimed" and v is None)}
    if rep.exact_claimed is not None:
        doc["exact"] = rep.exact_claimed
    _emit(args, row, lines, doc=doc)
    return EXIT_OK


def cmd_rho(args):
    d = args.d
    lo, hi = args.N
    table = _table_for(args, hi, d=d)
    budget = _budget(args)
    if lo == hi:
        res = solver.solve(d, lo, table, budget, force=args.force)
        row = res.as_dict()
        row["main_term"] = bnd.main_term(d, lo, table)
        lines = [
            f"rho_{d}({lo}) = {res.value}",
            "witness: " + " ".join(map(str, res.witness)),
            f"nodes: {res.nodes_explored}",
            f"upper bound used: {res.upper_bound_used}",
            f"elapsed: {res.elapsed:.3f}s",
        ]
        _emit(args, row, lines)
        return EXIT_OK

    results = solver.solve_range(d, lo, hi, table, budget, threads=_threads(args), force=args.force)
    rows, lines = [], [f"{'N':>4} {'rho':>5} {'main':>5} {'nodes':>10} {'time':>8}"]
    status = EXIT_OK
    for r in results:
        main = bnd.main_term(d, r.N, table)
        if isinstance(r, solver.SolveFailure):
            lo_b, hi_b = r.bracket
            rows.append({"d": d, "N": r.N, "value": None, "main_term": main, "lower": lo_b, "upper": hi_b,
                         "nodes_explored": None, "elapsed": None, "error": str(r.error)})
            lines.append(f"{r.N:>4} {'?':>5} {main:>5}  error: {r.error}")
            status = max(status, r.error.exit_code)
            continue
        rows.append({"d": d, "N": r.N, "value": r.value, "main_term": main, "lower": r.value,
                     "upper": r.upper_bound_used, "nodes_explored": r.nodes_explored,
                     "elapsed": round(r.elapsed, 6), "error": None})
        lines.append(f"{r.N:>4} {r.value:>5} {main:>5} {r.nodes_explored:>10} {r.elapsed:>7.3f}s")
    _emit(args, rows, lines)
    return status


def cmd_construct(args):
    d, N = args.d, args.N
    need = bnd.threshold(d)
    if N < need:
        exc = ThresholdNotMet(f"construction needs N >= 2^d p_d = {need}", minimum=need)
        print(f"error: {exc}", file=sys.stderr)
        print(f"minimum N is {need}")
        return exc.exit_code
    table = _table_for(args, N, d=d)
    cert = construction.build(d, N, table)
    ok = True
    if args.verify:
        ok = construction.verify_certificate(cert, table)
    doc = cert.to_dict()
    lines = [
        f"d = {d}, N = {N}, size {len(cert.full_set)} (claimed {cert.claimed_size})",
        "{" + ", ".join(map(str, cert.full_set)) + "}",
    ]
    for name, vals in cert.parts():
        lines.append(f"  {name}: {vals}")
    if args.verify:
        lines.append(f"verified: {cert.verified}")
        lines += [f"  {t}" for t in cert.transcript]
    row = {"d": d, "N": N, "claimed_size": cert.claimed_size, "verified": cert.verified, "full_set": cert.full_set}
    _emit(args, row, lines, doc=doc)
    return EXIT_OK if ok else EXIT_NEGATIVE


def read_integer_file(path):
    stream = sys.stdin if path == "-" else open(path, encoding="ascii")
    numbers = []
    try:
        for lineno, raw in enumerate(stream, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                n = int(line)
            except ValueError:
                raise InvalidArgument(f"line {lineno}: not an integer: {line!r}") from None
            if n < 1:
                raise InvalidArgument(f"line {lineno}: expected a positive integer, got {n}")
            numbers.append(n)
    except UnicodeDecodeError as exc:
        raise InvalidArgument(f"{path}: not ASCII text ({exc})") from None
    finally:
        if stream is not sys.stdin:
            stream.close()
    seen = set()
    dupes = sorted({n for n in numbers if n in seen or seen.add(n)})
    if dupes:
        raise InvalidArgument(f"duplicate entries: {dupes}")
    return numbers


def cmd_verify(args):
    d = args.d
    try:
        numbers = read_integer_file(args.file)
    except OSError as exc:
        raise InvalidArgument(str(exc)) from None
    table = _table_for(args, max(numbers, default=2))
    report = find_zero_sum(VectorMultiset.from_integers(numbers, d, table))
    row = {"d": d, "size": len(numbers), "free": not report.has_zero_sum}
    if report.has_zero_sum:
        product = math.prod(report.witness)
        root = integer_root(product, d)
        row.update(witness=list(report.witness), product=str(product), root=str(root))
        lines = [
            "NOT FREE",
            "witness: " + " ".join(map(str, report.witness)),
            f"product: {product} = {root}^{d}",
        ]
    else:
        lines = ["FREE"]
    _emit(args, row, lines)
    return EXIT_NEGATIVE if report.has_zero_sum else EXIT_OK


def cmd_davenport(args):
    spec = davenport.parse_group_spec(args.spec)
    # without a mode flag, report every quantity that applies
    modes = [args.mode] if args.mode else ["olson", "bound", "exact"]
    row = {"group": str(spec), "order": spec.order, "exponent": spec.exponent}
    lines = [f"G = {spec}  |G| = {spec.order}  exp(G) = {spec.exponent}"]
    for mode in modes:
        if mode == "olson":
            if args.mode is None and spec.p_group_prime() is None:
                continue
            row["olson"] = davenport.olson_davenport(spec)
            lines.append(f"olson  {row['olson']}")
        elif mode == "bound":
            row["bound"] = davenport.davenport_upper_bound(spec)
            row["bound_real"] = davenport.davenport_upper_bound_real(spec)
            lines.append(f"bound  {row['bound']} ({row['bound_real']:.4f})")
        else:
            kw = {"budget": args.budget} if args.budget is not None else {}
            try:
                res = davenport.davenport_search(spec, **kw)
            except CapacityError:
                if args.mode is None:
                    continue
                raise
            row.update(exact=res.value, nodes=res.nodes, witness=[list(w) for w in res.witness])
            lines.append(f"exact  {res.value}  (nodes {res.nodes}, zero-sum-free sequence of length {res.value - 1})")
    if args.mode in ("olson", "bound"):
        lines = [str(row[args.mode])]
    _emit(args, row, lines)
    return EXIT_OK


def cmd_primes(args):
    table = _table_for(args, args.N)
    ps = [int(p) for p in table.primes if p <= args.N]
    row = {"N": args.N, "pi": pi(table, args.N), "primes": ps}
    lines = [f"pi({args.N}) = {row['pi']}", " ".join(map(str, ps))]
    if args.nth is not None:
        row["nth_prime"] = bnd.nth_prime_small(args.nth)
        lines.append(f"p_{args.nth} = {row['nth_prime']}")
    _emit(args, row, lines)
    return EXIT_OK


COMMANDS = {
    "bounds": cmd_bounds,
    "rho": cmd_rho,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "davenport": cmd_davenport,
    "primes": cmd_primes,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except PowerFreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        lower, upper = getattr(exc, "lower", None), getattr(exc, "upper", None)
        if lower is not None or upper is not None:
            print(f"bracket: [{lower}, {upper}]")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
