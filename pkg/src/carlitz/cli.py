"""Command-line front end.

Exit codes: 0 success, 2 usage or malformed input, 3 budget refusal,
4 a consistency oracle or conjecture check failed (flagged finding).
"""

from __future__ import annotations

import argparse
import sys

from . import catalog as catalog_mod
from .census import CensusSpec, census, census_consistency
from .errors import (
    BudgetExceededError,
    CarlitzError,
    ConsistencyError,
    ParseError,
    SymmetryViolationError,
)
from .geometry import (
    hilbert_data,
    ideal_nesting_check,
    is_complete_intersection,
    smallest_power_in_ideal,
    variety_ideal,
    IdealHandle,
)
from .lfun import (
    build_k,
    load_provider,
    rank_record,
    schur_provider,
)
from .multipoly import parse_poly, to_text
from .twists import parse_twist

USAGE_EXIT = 2
BUDGET_EXIT = 3
FINDING_EXIT = 4


class _Args(argparse.ArgumentParser):
    def error(self, message):
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _provider_from(args):
    if getattr(args, "schur", None) is not None:
        return schur_provider(args.schur)
    if getattr(args, "provider", None):
        return load_provider(args.provider)
    raise ParseError("need --schur M or --provider FILE")


def _emit(args, kind, payload, provenance):
    if getattr(args, "catalog", None):
        catalog_mod.append_entry(args.catalog, kind, payload, provenance)


def cmd_lpoly(args):
    provider = _provider_from(args)
    L = provider.l_polynomial()
    print(L.text())
    _emit(args, "lpoly", L.text(), {
        "provider": provider.provider_id(), "m": provider.m,
        "q": "*" if provider.q is None else provider.q,
        "term_order": "grevlex", "seed": 0})
    return 0


def cmd_rank(args):
    provider = _provider_from(args)
    P = parse_twist(args.twist)
    record = rank_record(provider, P)
    print(record.text())
    _emit(args, "rank-record", record.text(), {
        "provider": provider.provider_id(), "m": provider.m,
        "q": P.field.q, "twist": P.text(), "term_order": "grevlex",
        "seed": 0})
    return 0


def cmd_variety(args):
    handle = variety_ideal(args.m, args.i)
    status = 0
    lines = [f"# provider = {handle.provenance['provider']}",
             f"# window_betas = {handle.provenance['window_betas']}",
             f"# window_degrees = {handle.provenance['window_degrees']}",
             f"# window_rule = {handle.provenance['window_rule']}"]
    for g in handle.generators:
        lines.append(to_text(g))
    if args.degree:
        dim, deg = hilbert_data(handle)
        lines.append(f"dimension = {dim}")
        lines.append(f"degree = {deg}")
    if args.ci_check:
        ci = is_complete_intersection(handle)
        lines.append(f"complete_intersection = {str(ci).lower()}")
        if not ci:
            status = FINDING_EXIT
    if args.nesting:
        ok = ideal_nesting_check(args.m, args.i)
        lines.append(f"nesting = {str(ok).lower()}")
        if not ok:
            status = FINDING_EXIT
    text = "\n".join(lines)
    print(text)
    _emit(args, "ideal-report", text, {
        "provider": handle.provenance["provider"], "m": args.m, "i": args.i,
        "window": str(handle.provenance["window_betas"]),
        "term_order": "grevlex", "seed": 0})
    return status


def cmd_census(args):
    provider = None
    if args.provider:
        provider = load_provider(args.provider)
    thresholds = tuple(int(x) for x in args.i_list.split(","))
    filters = tuple(f for f in (args.filters or "").split(",") if f)
    spec = CensusSpec(args.q, args.m, provider=provider,
                      rank_kind=args.rank_kind, thresholds=thresholds,
                      filters=filters, shards=args.shards,
                      backend=args.backend)
    if args.check:
        reportobj = census_consistency(spec)
        if not reportobj:
            for w in reportobj.witnesses:
                print(f"witness: {w}", file=sys.stderr)
            raise ConsistencyError("census pipelines disagree",
                                   reportobj.witnesses)
    result = census(spec)
    rows = result.csv_rows(spec)
    print("\n".join(rows))
    if args.jsonl:
        import json
        with open(args.jsonl, "w", encoding="utf-8") as fh:
            for text, rank in result.records:
                fh.write(json.dumps({"twist": text, "rank": rank,
                                     "rank_kind": spec.rank_kind}) + "\n")
    _emit(args, "census", "\n".join(rows), {
        "provider": spec.provider.provider_id(), "q": args.q, "m": args.m,
        "rank_kind": spec.rank_kind, "filters": ",".join(filters),
        "shards": args.shards, "term_order": "grevlex", "seed": 0,
        "manifest": [list(b) for b in result.manifest]})
    return 0


def cmd_kappa(args):
    if args.m is not None and args.i is not None:
        handle = variety_ideal(args.m, args.i)
    elif args.gens:
        from .multipoly import PolyRing, QQ

        nv = args.nvars if args.nvars is not None else 3
        ring = PolyRing(QQ, tuple(f"a{j}" for j in range(nv)))
        gens = [parse_poly(s, ring) for s in args.gens.split(";")]
        handle = IdealHandle(ring, gens)
    else:
        raise ParseError("need --m and --i, or --gens")
    f = parse_poly(args.f, handle.ring)
    kappa = smallest_power_in_ideal(f, handle, args.kappa_max)
    print("absent" if kappa is None else kappa)
    return 0


def cmd_provider_check(args):
    provider = load_provider(args.file)
    k_expected = ("n/a" if provider.q is None
                  else build_k(provider.q, provider.m, provider.n))
    print(f"ok: q={provider.q} m={provider.m} n={provider.n} k={provider.k} "
          f"(ceiling check: {k_expected}) id={provider.provider_id()}")
    return 0


def cmd_report(args):
    query = {}
    if args.kind:
        query["kind"] = args.kind
    if args.q is not None:
        query["q"] = args.q
    if args.m is not None:
        query["m"] = args.m
    if args.i is not None:
        query["i"] = args.i
    skipped = catalog_mod.report(args.catalog, query)
    return 1 if skipped else 0


def build_parser():
    top = _Args(prog="carlitz", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--catalog", help="append results to this JSONL catalog")

    p = sub.add_parser("lpoly", help="symbolic L-polynomial of a provider")
    p.add_argument("--provider", help="provider file")
    p.add_argument("--schur", type=int, help="built-in provider for this m")
    common(p)
    p.set_defaults(func=cmd_lpoly)

    p = sub.add_parser("rank", help="both ranks of one twist")
    p.add_argument("--provider")
    p.add_argument("--schur", type=int)
    p.add_argument("--twist", required=True, help="e.g. F3:1,0,2,1")
    common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("variety", help="defining ideal of a rank locus")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--degree", action="store_true")
    p.add_argument("--ci-check", dest="ci_check", action="store_true")
    p.add_argument("--nesting", action="store_true")
    common(p)
    p.set_defaults(func=cmd_variety)

    p = sub.add_parser("census", help="exhaustive rank census over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--provider")
    p.add_argument("--rank-kind", dest="rank_kind", default="at-infinity",
                   choices=["at-infinity", "at-one"])
    p.add_argument("--i-list", dest="i_list", default="0,1,2")
    p.add_argument("--filters", default="")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--backend", default="auto",
                   choices=["auto", "pure", "compiled"])
    p.add_argument("--jsonl", help="write above-threshold points here")
    p.add_argument("--check", action="store_true",
                   help="run the two-pipeline consistency oracle first")
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("kappa", help="least power of f lying in an ideal")
    p.add_argument("--f", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--gens", help="semicolon-separated generators")
    p.add_argument("--nvars", type=int)
    p.add_argument("--kappa-max", dest="kappa_max", type=int, default=6)
    common(p)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("provider-check", help="validate a provider file")
    p.add_argument("file")
    p.set_defaults(func=cmd_provider_check)

    p = sub.add_parser("report", help="CSV table from a catalog")
    p.add_argument("--catalog", required=True)
    p.add_argument("--kind")
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--i", type=int)
    p.set_defaults(func=cmd_report)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return BUDGET_EXIT
    except (ConsistencyError, SymmetryViolationError) as exc:
        print(f"oracle failure: {exc}", file=sys.stderr)
        return FINDING_EXIT
    except (CarlitzError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
