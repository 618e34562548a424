"""Command-line front end.

Exit status: 0 when every result passes, 1 when any result fails, 2 for usage
errors and for results that lacked the precision to decide.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor

from . import __version__
from .congruence import (
    DEFAULT_ARGUMENT_BOUND,
    check_claim,
    check_claims,
    claims_lemma11,
    claims_thm31,
    claims_thm41,
    claims_thm51,
    claims_thm61,
    oracle_table,
    scan_congruences,
)
from .errors import ParseError, RDError
from .identity.catalog import builtin_catalog, catalog_entry, parse_catalog, verify_identity
from .partitions import PartitionConstraint, count_partitions, enumerate_partitions, format_partition
from .reports import FAIL, INSUFFICIENT, VerificationReport
from .series import EXACT, CoefficientRing

JSON_VERSION = "1"
THEOREMS = ("3.1", "4.1", "5.1", "6.1", "lemma1.1")
# default n ranges for the families whose arguments stay small
FIXED_NMAX = {"6.1": 1000, "lemma1.1": 1000}


class UsageError(Exception):
    pass


def _ring(mod: int | None) -> CoefficientRing:
    if mod is None:
        return EXACT
    if mod < 2:
        raise UsageError("--mod must be >= 2")
    return CoefficientRing.mod(mod)


def _pool_map(fn, items: list, jobs: int, processes: bool) -> list:
    """Apply ``fn`` to every item; results come back in input order."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    pool = ProcessPoolExecutor if processes else ThreadPoolExecutor
    with pool(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# -- subcommand bodies ----------------------------------------------------------


def _compute(args) -> tuple[list[dict], int]:
    kind = args.kind
    if kind == "rd":
        constraint = PartitionConstraint(args.ell, args.t)
    elif kind == "regular":
        constraint = PartitionConstraint(ell=args.ell)
    else:
        constraint = PartitionConstraint(t=args.t)
    table = count_partitions(constraint, args.nmax, _ring(args.mod))
    rows = [{"n": n, "value": v} for n, v in enumerate(table.tolist())]
    if not args.json:
        for row in rows:
            print(f"{row['n']} {row['value']}")
    return rows, 0


def _enumerate(args) -> tuple[list[dict], int]:
    parts = enumerate_partitions(PartitionConstraint(args.ell, args.t), args.n)
    rows = [{"parts": [list(pm) for pm in p], "text": format_partition(p)} for p in parts]
    if not args.json:
        for row in rows:
            print(row["text"])
        print(f"# {len(rows)} partitions of {args.n}")
    return rows, 0


def _load_entries(path: str | None):
    if path is None:
        return builtin_catalog()
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh.read())


def _verify_entry(job):
    entry, depth, audit = job
    return verify_identity(entry, depth, audit)


def _status(reports: list[VerificationReport]) -> int:
    if any(r.status == FAIL for r in reports):
        return 1
    if any(r.status == INSUFFICIENT for r in reports):
        return 2
    return 0


def _emit(reports: list[VerificationReport], as_json: bool) -> list[dict]:
    if not as_json:
        for r in reports:
            print(r.summary())
    return [r.to_dict() for r in reports]


def _verify_identity(args) -> tuple[list[dict], int]:
    entries = _load_entries(args.catalog)
    if args.id == "all":
        selected = entries
    else:
        try:
            selected = [catalog_entry(args.id, entries)]
        except KeyError:
            raise UsageError(f"no catalog entry {args.id!r}") from None
    reports = _pool_map(_verify_entry, [(e, args.depth, args.audit) for e in selected],
                        args.jobs, processes=True)
    return _emit(reports, args.json), _status(reports)


def _theorem_claims(args):
    name = args.theorem
    if name in ("3.1", "5.1") and args.prime is None:
        raise UsageError(f"theorem {name} needs --prime")
    alpha = 0 if args.alpha is None else args.alpha
    if name == "3.1":
        return claims_thm31(args.prime, alpha)
    if name == "5.1":
        return claims_thm51(args.prime, alpha)
    if name == "4.1":
        return claims_thm41(alpha)
    if name == "6.1":
        return claims_thm61()
    return claims_lemma11()


def _verify_theorem(args) -> tuple[list[dict], int]:
    claims = _theorem_claims(args)
    n_max = args.nmax if args.nmax is not None else FIXED_NMAX.get(args.theorem)
    if n_max is not None and n_max < 0:
        raise UsageError("--nmax must be >= 0")
    if args.jobs <= 1:
        reports = check_claims(claims, n_max, args.max_arg)
    else:
        # build the shared table once, then fan the cheap per-claim checks out
        ranges = [c.max_n(args.max_arg) if n_max is None else n_max for c in claims]
        size = max(c.argument(n) for c, n in zip(claims, ranges))
        table = oracle_table(4, 9, size)
        reports = _pool_map(lambda cn: check_claim(cn[0], cn[1], table),
                            list(zip(claims, ranges)), args.jobs, processes=False)
    return _emit(reports, args.json), _status(reports)


def _scan(args) -> tuple[list[dict], int]:
    moduli = args.mod or [2, 3, 4, 6, 12, 24]
    found = scan_congruences(args.ell, args.t, args.amax, moduli, args.evidence)
    rows = [{"A": A, "B": B, "M": M} for A, B, M in found]
    if not args.json:
        for A, B, M in found:
            print(f"RD({args.ell},{args.t})({A}n+{B}) = 0 mod {M}")
    return rows, 0


def _catalog_list(args) -> tuple[list[dict], int]:
    entries = _load_entries(args.catalog)
    rows = [{"id": e.id, "relation": e.relation, "min_terms": e.min_terms, "text": e.text}
            for e in entries]
    if not args.json:
        width = max(len(e.id) for e in entries) if entries else 0
        for e in entries:
            print(f"{e.id:<{width}}  {e.text}  [{e.min_terms} terms]")
    return rows, 0


# -- argument parsing -----------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit one JSON object on stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker pool size (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdcong", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="count restricted partitions for n = 0..nmax")
    comp.add_argument("kind", choices=("rd", "regular", "distinct"))
    comp.add_argument("--ell", type=int, default=4)
    comp.add_argument("--t", type=int, default=9)
    comp.add_argument("--nmax", type=int, required=True)
    comp.add_argument("--mod", type=int, help="reduce counts mod this modulus")
    _common(comp)
    comp.set_defaults(run=_compute)

    enum = sub.add_parser("enumerate", help="list the RD(ell,t) partitions of n")
    enum.add_argument("--ell", type=int, default=4)
    enum.add_argument("--t", type=int, default=9)
    enum.add_argument("--n", type=int, required=True)
    _common(enum)
    enum.set_defaults(run=_enumerate)

    ver = sub.add_parser("verify", help="verify catalog identities or theorem families")
    vsub = ver.add_subparsers(dest="target", required=True)
    vid = vsub.add_parser("identity", help="verify one catalog entry, or 'all'")
    vid.add_argument("id")
    vid.add_argument("--depth", type=int, help="truncation depth (default: per entry)")
    vid.add_argument("--catalog", help="catalog file in the identity language")
    vid.add_argument("--audit", action="store_true",
                     help="evaluate congruences exactly and reduce at the end")
    _common(vid)
    vid.set_defaults(run=_verify_identity)

    vth = vsub.add_parser("theorem", help="check a family of congruences against the partition DP")
    vth.add_argument("theorem", choices=THEOREMS)
    vth.add_argument("--prime", type=int)
    vth.add_argument("--alpha", type=int)
    vth.add_argument("--nmax", type=int, help="check n = 0..nmax (default: up to --max-arg)")
    vth.add_argument("--max-arg", type=int, default=DEFAULT_ARGUMENT_BOUND,
                     help=f"largest partition argument when --nmax is absent (default {DEFAULT_ARGUMENT_BOUND})")
    _common(vth)
    vth.set_defaults(run=_verify_theorem)

    scan = sub.add_parser("scan", help="search for vanishing progressions")
    scan.add_argument("--ell", type=int, default=4)
    scan.add_argument("--t", type=int, default=9)
    scan.add_argument("--amax", type=int, default=24)
    scan.add_argument("--mod", type=int, action="append", help="modulus to test (repeatable)")
    scan.add_argument("--evidence", type=int, default=200, help="every n <= this must vanish")
    _common(scan)
    scan.set_defaults(run=_scan)

    cat = sub.add_parser("catalog", help="inspect the identity catalog")
    csub = cat.add_subparsers(dest="action", required=True)
    clist = csub.add_parser("list")
    clist.add_argument("--catalog", help="catalog file in the identity language")
    _common(clist)
    clist.set_defaults(run=_catalog_list)
    return parser


def _config(args) -> dict:
    skip = {"run", "jobs", "json"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        results, code = args.run(args)
    except (UsageError, ParseError, RDError, ValueError, OSError) as exc:
        print(f"rdcong: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        payload = {"version": JSON_VERSION, "config": _config(args), "results": results}
        print(json.dumps(payload, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
