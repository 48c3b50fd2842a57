"""Command line front end: ``pretzelfal report|fields|classify|verify``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import mpmath

from . import hypgeom
from .classify import MissingDataError, NeumannReidTable, PretzelFal, classify, max_hidden_symmetries
from .numtheory import euler_totient, lcm
from .report import CacheError, TraceFieldCache, build_report, default_cache_path, digits_for
from .tracefield import build_trace_field, fields_equal

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_MISSING = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_range(text):
    try:
        a, b = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    return a, b


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--precision", type=int, default=hypgeom.DEFAULT_PREC, metavar="BITS",
                   help="binary working precision (default %(default)s)")
    p.add_argument("--cache", metavar="PATH", default=None,
                   help="trace-field cache file (default: $PRETZELFAL_CACHE)")
    return p


def make_parser():
    common = _common()
    parser = _Parser(prog="pretzelfal", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("report", parents=[common], help="full report for one manifold")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--twists", default=None, help="twist vector as a 0/1 string, default all zero")
    p.add_argument("--nr-table", metavar="PATH", default=None)
    p.add_argument("--v0", default=None, help="least one-cusped orbifold volume, for the hidden-symmetry bound")
    p.add_argument("--max-hidden", action="store_true", help="include volume/v0 (needs --v0)")

    p = sub.add_parser("fields", parents=[common], help="trace-field table or equality test")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--table", action="store_true")
    g.add_argument("--equal", nargs=2, type=int, metavar=("M", "N"))
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("classify", parents=[common], help="batch classification over a range of n")
    p.add_argument("--range", dest="span", type=_parse_range, required=True, metavar="A..B")
    p.add_argument("--nr-table", metavar="PATH", default=None)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("verify", parents=[common], help="run the release checks")
    p.add_argument("--suite", choices=("all", "fields", "geometry", "graphs", "symmetry"), default="all")
    return parser


def _open_cache(args):
    path = args.cache or default_cache_path()
    return TraceFieldCache(path) if path else None


def _emit_table(rows, columns, fmt, out):
    if fmt == "json":
        out.write(json.dumps(rows, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        w = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({c: r[c] for c in columns})
    else:
        cells = [[str(r[c]) for c in columns] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
        out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
        for row in cells:
            out.write("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() + "\n")


def _pmap(fn, items, jobs):
    # results always come back in input order
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# report


def cmd_report(args, out):
    if args.n < 3:
        raise UsageError("n must be >= 3")
    try:
        m = PretzelFal.parse(args.n, args.twists)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    table = NeumannReidTable.load(args.nr_table) if args.nr_table else None
    if args.max_hidden and args.v0 is None:
        max_hidden_symmetries(0, None)  # raises MissingDataError
    cache = _open_cache(args)
    doc = build_report(m, args.precision, cache, table, args.v0 if args.max_hidden else None)
    if cache is not None:
        cache.save()
    if args.format == "json":
        out.write(doc.render_json())
    elif args.format == "csv":
        raise UsageError("report supports json and text formats")
    else:
        out.write(doc.render_text())
    return EXIT_OK


# fields


def _field_row(n):
    d = build_trace_field(n)
    return {"n": n, "phi": euler_totient(n), "min_poly": str(d.min_poly), "conductor": d.conductor,
            "stabilizer_order": d.stabilizer.order}


def cmd_fields(args, out):
    cache = _open_cache(args)
    if args.table:
        if args.max is None or args.max < 3:
            raise UsageError("--table needs --max M with M >= 3")
        ns = list(range(3, args.max + 1))
        if cache is not None:
            rows = []
            for n in ns:
                d = cache.get(n)
                rows.append({"n": n, "phi": euler_totient(n), "min_poly": str(d.min_poly),
                             "conductor": d.conductor, "stabilizer_order": d.stabilizer.order})
            cache.save()
        else:
            rows = _pmap(_field_row, ns, args.jobs)
        _emit_table(rows, ["n", "phi", "min_poly", "conductor", "stabilizer_order"], args.format, out)
        return EXIT_OK
    m, n = args.equal
    if m < 3 or n < 3:
        raise UsageError("field indices must be >= 3")
    a, b = (build_trace_field(k) if cache is None else cache.get(k) for k in (m, n))
    level = lcm(a.conductor, b.conductor)
    ha, hb = a.stabilizer.preimage(level), b.stabilizer.preimage(level)
    equal = fields_equal(m, n)
    if cache is not None:
        cache.save()
    if args.format == "json":
        out.write(json.dumps({"m": m, "n": n, "equal": equal, "level": level,
                              "stabilizers": {str(m): list(ha.members), str(n): list(hb.members)}},
                             sort_keys=True) + "\n")
    else:
        out.write(("true" if equal else "false") + "\n")
        out.write(f"level {level}: stabilizer of n={m} has order {ha.order}, of n={n} has order {hb.order}\n")
        if level <= 120:
            out.write(f"  H({m}) = {list(ha.members)}\n  H({n}) = {list(hb.members)}\n")
    return EXIT_OK


# classify


def _classify_row(job):
    n, prec, table = job
    rep = classify(PretzelFal(n), table, prec)
    d = digits_for(prec)
    corr = [e for e in rep.verdict.evidence if e.rule in ("geodesic-threshold", "nr-table")]
    return {
        "n": n,
        "verdict": rep.verdict.verdict,
        "evidence": "+".join(rep.verdict.codes),
        "corroboration": corr[0].conclusion if corr else "n/a",
        "commensurability_key": rep.commensurability_key,
        "volume": mpmath.nstr(rep.volume, d, strip_zeros=False),
        "f": mpmath.nstr(rep.f, d, strip_zeros=False),
    }


def cmd_classify(args, out, err):
    a, b = args.span
    if a < 3 or b < a:
        raise UsageError("range must satisfy 3 <= A <= B")
    table = None
    if args.nr_table:
        try:
            table = NeumannReidTable.load(args.nr_table)
        except (MissingDataError, ValueError) as exc:
            err.write(f"warning: {exc}; corroboration marked unavailable\n")
    rows = _pmap(_classify_row, [(n, args.precision, table) for n in range(a, b + 1)], args.jobs)
    cols = ["n", "verdict", "evidence", "corroboration", "commensurability_key", "volume", "f"]
    _emit_table(rows, cols, args.format, out)
    return EXIT_OK


# verify


def cmd_verify(args, out):
    from .verify import run_suite

    results = []
    cache_ok, cache_msg = True, None
    path = args.cache or default_cache_path()
    if path:
        try:
            c = TraceFieldCache(path)
            cache_msg = f"cache {path}: {len(c)} entries re-verified"
        except CacheError as exc:
            cache_ok, cache_msg = False, str(exc)

    def show(res):
        results.append(res)
        if args.format == "text":
            out.write(res.line() + "\n")
            out.flush()

    run_suite(args.suite, progress=show)
    passed = sum(r.passed for r in results) + (1 if path and cache_ok else 0)
    failed = sum(not r.passed for r in results) + (0 if cache_ok else 1)
    if args.format == "text":
        if cache_msg:
            out.write(f"[{'PASS' if cache_ok else 'FAIL'}] cache: {cache_msg}\n")
        out.write(f"{passed} passed, {failed} failed\n")
    else:
        summary = {"suite": args.suite, "passed": passed, "failed": failed,
                   "checks": [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                              for r in results]}
        if cache_msg:
            summary["cache"] = {"passed": cache_ok, "detail": cache_msg}
        if args.format == "json":
            out.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
        else:
            buf = io.StringIO()
            _emit_table(summary["checks"], ["number", "name", "passed", "detail"], "csv", buf)
            out.write(buf.getvalue())
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.precision < hypgeom.MIN_PREC:
        err.write(f"pretzelfal: error: precision must be at least {hypgeom.MIN_PREC} bits\n")
        return EXIT_USAGE
    try:
        if args.command == "report":
            return cmd_report(args, out)
        if args.command == "fields":
            return cmd_fields(args, out)
        if args.command == "classify":
            return cmd_classify(args, out, err)
        return cmd_verify(args, out)
    except UsageError as exc:
        err.write(f"pretzelfal: error: {exc}\n")
        return EXIT_USAGE
    except MissingDataError as exc:
        err.write(f"pretzelfal: missing data: {exc}\n")
        return EXIT_MISSING
    except CacheError as exc:
        err.write(f"pretzelfal: cache verification failed: {exc}\n")
        return EXIT_VERIFY
    except ValueError as exc:
        err.write(f"pretzelfal: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
