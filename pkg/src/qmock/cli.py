"""Command-line front end: ``qmock verify | expand | bound | list``."""
from __future__ import annotations

import argparse
import json
import sys

from .cyclotomic import DEFAULT_K
from .dsl import DSLError, EvaluationError, IngestError, evaluate, load_identities, parse
from .qseries import SeriesError, format_series
from .valence import ValenceError, valence_bound
from .verify import ERROR, PASS, UnknownIdentityError, field_for, lookup, select, verify_all, verify_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qmock", description="Exact q-series expansion and identity verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, select_ids=True):
        sp.add_argument("--order", type=_positive, help="truncation order (default: per identity)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("-K", type=_positive, default=None, help="cyclotomic order override")
        sp.add_argument("--ingest", metavar="PATH", help="JSON file of extra identities")
        if select_ids:
            sp.add_argument("--id", action="append", default=[], metavar="NAME")
            sp.add_argument("--tag", action="append", default=[])
            sp.add_argument("--all", action="store_true")

    v = sub.add_parser("verify", help="verify identities")
    common(v)
    v.add_argument("--jobs", type=_positive, default=1)
    v.add_argument("--timing", action="store_true", help="report elapsed times")

    e = sub.add_parser("expand", help="expand an expression")
    common(e, select_ids=False)
    e.add_argument("--expr", required=True)

    b = sub.add_parser("bound", help="valence truncation bound")
    common(b)
    b.add_argument("--level", type=_positive, help="override the identity's level N")
    b.add_argument("--check", action="store_true", help="also verify to the required order")

    ls = sub.add_parser("list", help="list registry identities")
    ls.add_argument("--tag", action="append", default=[])
    ls.add_argument("--format", choices=("text", "json"), default="text")
    ls.add_argument("--ingest", metavar="PATH")
    return p


def _extra(args):
    if getattr(args, "ingest", None):
        return load_identities(args.ingest, getattr(args, "K", None) or DEFAULT_K)
    return []


def _selected(args, parser, extra):
    if not (args.all or args.id or args.tag):
        parser.error(f"{args.command}: give --id, --tag or --all")
    if args.all:
        return select(extra=extra)
    specs = [lookup(n, extra) for n in args.id]
    seen = {s.name for s in specs}
    specs += [s for s in select(tags=args.tag, extra=extra) if args.tag and s.name not in seen]
    return specs


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False)


def _cmd_verify(args, parser, out):
    extra = _extra(args)
    specs = _selected(args, parser, extra)
    result = verify_all(order=args.order, K=args.K, jobs=args.jobs, specs=specs)
    if args.format == "json":
        out.write(_dump(result.to_json(args.timing)) + "\n")
    else:
        for r in result.reports:
            out.write(r.text(args.timing) + "\n")
        c = result.counts()
        out.write(f"{c['pass']} pass, {c['fail']} fail, {c['error']} error\n")
    c = result.counts()
    if c["error"]:
        return EXIT_USAGE
    return EXIT_OK if c["fail"] == 0 else EXIT_FAIL


def _cmd_expand(args, parser, out):
    K = args.K or DEFAULT_K
    order = args.order or 20
    f = evaluate(parse(args.expr, K), order, K)
    if args.format == "json":
        coeffs = {str(e): str(f.coeff(e)) for e in f.support()}
        out.write(_dump({"expr": args.expr, "order": order, "K": K, "coefficients": coeffs}) + "\n")
    else:
        out.write(format_series(f) + "\n")
    return EXIT_OK


def _cmd_bound(args, parser, out):
    extra = _extra(args)
    specs = _selected(args, parser, extra)
    status = EXIT_OK
    docs = []
    for spec in specs:
        K = args.K or field_for(spec)
        r = valence_bound(spec, args.level, K)
        rep = verify_spec(r.normalized, K=K) if args.check else None
        if rep is not None and rep.status != PASS:
            status = EXIT_FAIL if rep.status != ERROR else EXIT_USAGE
        if args.format == "json":
            docs.append({"name": r.name, "N": r.N, "cusps": r.table(), "B": r.B, "B_sharp": r.B_sharp,
                         "required_order": r.required_order, "normalized": r.normalized.lhs,
                         "check": rep.to_json() if rep else None})
            continue
        out.write(f"{r.name} on Gamma1({r.N}): {len(r.forms)} functions, {len(r.cusps)} cusps\n")
        for j, f in enumerate(r.forms, 1):
            out.write(f"  f{j} = {f.to_source()}\n")
        out.write(f"  {'cusp':<10} {'width':>5}  ORD(f_j)\n")
        for row in r.table():
            out.write(f"  {row['cusp']:<10} {row['width']:>5}  {' '.join(f'{o:>6}' for o in row['ORD'])}\n")
        out.write(f"B = {r.B}\nrequired order {r.required_order}\n")
        if r.B_sharp != r.B:
            out.write(f"(sharp bound without the i-infinity class: B = {r.B_sharp})\n")
        if rep:
            out.write(rep.text() + "\n")
    if args.format == "json":
        out.write(_dump(docs if len(docs) != 1 else docs[0]) + "\n")
    return status


def _cmd_list(args, parser, out):
    specs = select(tags=args.tag, extra=_extra(args))
    if args.format == "json":
        out.write(_dump([s.to_json() for s in specs]) + "\n")
    else:
        for s in specs:
            out.write(f"{s.name:<18} K={s.cyclotomic_order:<3} order={s.default_order:<4} {','.join(s.tags)}\n")
    return EXIT_OK


_COMMANDS = {"verify": _cmd_verify, "expand": _cmd_expand, "bound": _cmd_bound, "list": _cmd_list}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, parser, out)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (DSLError, EvaluationError, SeriesError, IngestError, ValenceError,
            UnknownIdentityError, OSError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownIdentityError) else str(exc)
        sys.stderr.write(f"qmock: {type(exc).__name__}: {msg}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
