"""Command-line front end.

    flasque verify {klein,local,global,all} [--format text|json]
    flasque cohom  (--file PATH | --preset klein) LATTICE SUBGROUP DEGREE
    flasque resolve (--file PATH | --preset klein) LATTICE [--method auto|generic|explicit]
    flasque export klein

Exit status: 0 on success, 1 when a verification check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .cohomology import tate
from .fileformat import Document, FormatError, PRESETS, dumps, load_document, preset_document
from .groups import GroupError, parse_subgroup
from .report import CheckReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def run_suite(target: str) -> CheckReport:
    from . import ideles, klein, localfield

    suites = {"klein": klein.verify_all, "local": localfield.verify_all, "global": ideles.verify_all}
    if target == "all":
        rep = CheckReport()
        for name in ("klein", "local", "global"):
            rep.extend(suites[name]())
        return rep
    return suites[target]()


def cmd_verify(args) -> int:
    rep = run_suite(args.target)
    print(rep.to_json() if args.format == "json" else rep.to_text())
    return rep.exit_code


def _document(args) -> Document:
    if args.file:
        return load_document(args.file)
    return preset_document(args.preset or "klein")


def cmd_cohom(args) -> int:
    doc = _document(args)
    m = doc.lattice(args.lattice)
    try:
        h = parse_subgroup(doc.group, args.subgroup)
    except (KeyError, GroupError) as exc:
        raise FormatError(f"bad subgroup {args.subgroup!r}: {exc}") from None
    print(tate(args.degree, h, m))
    return EXIT_OK


def cmd_resolve(args) -> int:
    from .resolutions import coflasque_resolution

    doc = _document(args)
    m = doc.lattice(args.lattice)
    method = args.method
    use_explicit = method == "explicit" or (method == "auto" and not args.file and args.lattice == "Tstar")
    if use_explicit:
        if args.file or args.lattice != "Tstar":
            raise FormatError("the explicit resolution exists only for Tstar in the klein preset")
        from .klein import build_T_star
        res = build_T_star().resolution
    else:
        res = coflasque_resolution(m)
    summary = {"lattice": args.lattice, "method": "explicit" if use_explicit else "generic", **res.summary()}
    if args.format == "json":
        print(json.dumps(summary, ensure_ascii=False, indent=2, sort_keys=True))
    else:
        blocks = ", ".join(f"Z[G/{b['subgroup']}]^{b['multiplicity']}" for b in summary["blocks"]) or "0"
        print(f"lattice:   {args.lattice} (rank {summary['target_rank']})")
        print(f"method:    {summary['method']}")
        print(f"P:         {blocks} (rank {summary['P_rank']})")
        print(f"F rank:    {summary['F_rank']}")
        print(f"coflasque: {'true' if summary['coflasque'] else 'false'}")
    return EXIT_OK


def cmd_export(args) -> int:
    sys.stdout.write(dumps(PRESETS[args.preset]()))
    return EXIT_OK


def _add_source(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--file", metavar="PATH", help="lattice document (JSON)")
    src.add_argument("--preset", choices=sorted(PRESETS), help="built-in lattice document (default: klein)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flasque", description="G-lattices, Tate cohomology and coflasque "
                                                                 "resolutions, with built-in verification suites")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("target", choices=["klein", "local", "global", "all"])
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cohom", help="Tate cohomology of a lattice")
    _add_source(c)
    c.add_argument("lattice")
    c.add_argument("subgroup", help='"G", "1", or generator labels such as "σ" or "σ,τ"')
    c.add_argument("degree", type=int, choices=[-1, 0, 1])
    c.set_defaults(func=cmd_cohom)

    r = sub.add_parser("resolve", help="coflasque resolution of a lattice")
    _add_source(r)
    r.add_argument("lattice")
    r.add_argument("--method", choices=["auto", "generic", "explicit"], default="auto")
    r.add_argument("--format", choices=["text", "json"], default="text")
    r.set_defaults(func=cmd_resolve)

    e = sub.add_parser("export", help="print a built-in lattice document")
    e.add_argument("preset", choices=sorted(PRESETS))
    e.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"flasque: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
