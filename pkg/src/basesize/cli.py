"""Command line entry point ``bst``.

Exit codes: 0 when the claim is established, 1 when it is not (a search ran
out or an inequality failed), 2 on bad input or inconsistent data.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
from fractions import Fraction
from pathlib import Path

from .base import Policy, exact_base_size, survey
from .classdata import ClassDataError, qhat_terms
from .classdb import StrictModeError
from .formats import FormatError, parse_certificates, parse_group_file, serialize_certificates
from .groups import IndexCapExceeded
from .reports import SUITES, load_data, verify_report
from .subgroups import double_cosets

OK, NOT_ESTABLISHED, BAD_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _group(path: str):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    g = parse_group_file(text, source=p.name)
    if g.name is None:
        g.name = p.stem
    return g


def _subgroup(path: str, g):
    h = _group(path)
    if h.degree != g.degree:
        raise UsageError(f"{path}: degree {h.degree}, ambient degree {g.degree}")
    if not h.is_subgroup_of(g):
        raise UsageError(f"{h.name} is not a subgroup of {g.name}")
    return h


def _show(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# -- commands -------------------------------------------------------------

def cmd_order(args) -> int:
    print(_group(args.group).order)
    return OK


def cmd_base_size(args) -> int:
    g = _group(args.group)
    h = _subgroup(args.subgroup, g)
    policy = Policy(max_c=args.max_c, trials=args.trials, seed=args.seed, workers=args.workers,
                    exhaustive="always" if args.exhaustive else "auto")
    try:
        res = exact_base_size(g, h, policy)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(res.describe())
    for c in res.certificates:
        print(f"  {c.describe()}")
    if args.emit_cert:
        Path(args.emit_cert).write_text(serialize_certificates(res.certificates), encoding="utf-8")
    return OK if res.exact else NOT_ESTABLISHED


def cmd_witness_verify(args) -> int:
    g = _group(args.group)
    h = _subgroup(args.subgroup, g)
    path = Path(args.cert)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {args.cert}: {e.strerror}") from None
    certs = parse_certificates(text, source=path.name)
    status = OK
    for c in certs:
        try:
            good = c.verify(g, h)
        except ValueError as e:
            print(f"{c.describe()}: invalid ({e})")
            good = False
        else:
            print(f"{c.describe()}: {'verified' if good else 'NOT verified'}")
        if not good:
            status = NOT_ESTABLISHED
    return status


def cmd_double_cosets(args) -> int:
    g = _group(args.group)
    k = _subgroup(args.subgroup, g)
    census = double_cosets(g, k, budget=args.budget)
    ksq = k.order ** 2
    print(f"|G| = {g.order}, |K| = {k.order}, index {g.order // k.order}")
    print(f"double cosets found: {len(census.entries)}"
          f"{'' if census.complete else ' (partial census)'}")
    print(f"total size: {census.total}{' = |G|' if census.total == g.order else ''}")
    if args.summary:
        for size, mult in census.summary().items():
            print(f"  size {size}: {mult}")
    else:
        for rep, size in census.entries:
            cyc = "".join("(" + ",".join(map(str, c)) + ")" for c in rep.cycles()) or "()"
            print(f"  {size}  {cyc}")
    regular = census.has_regular()
    if regular:
        print(f"a double coset of size |K|^2 = {ksq} exists: b(G,K) <= 2")
        return OK
    if census.complete:
        print(f"no double coset of size |K|^2 = {ksq}: b(G,K) >= 3")
        return OK
    print("no double coset of size |K|^2 among those found; census incomplete")
    return NOT_ESTABLISHED


def cmd_qhat(args) -> int:
    data, problems = load_data(args.data, strict=args.strict)
    for p in problems:
        print(f"data: {p}", file=sys.stderr)
    table = data.table(args.group)
    sub = data.subgroup(args.subgroup, args.group)
    terms = qhat_terms(table, sub, args.c)
    total = sum(terms.values(), Fraction(0))
    for lab, v in terms.items():
        if v:
            print(f"  {lab}: |x^G| = {table.size(lab)}, |x^G cap H| = {sub.counts[lab]}, "
                  f"term = {_show(v)}")
    verdict = total < 1
    print(f"Q-hat({args.group}, {args.subgroup}, {args.c}) = {_show(total)} ~ {float(total):.6g}")
    print(f"Q-hat {'<' if verdict else '>='} 1: "
          f"{'b <= ' + str(args.c) + ' established' if verdict else 'no conclusion'}")
    return OK if verdict else NOT_ESTABLISHED


def cmd_report(args) -> int:
    data, problems = load_data(args.data, strict=args.strict)
    report = verify_report(SUITES[args.suite](data), data, problems)
    print(report.render(verbose=not args.brief))
    return OK if report.ok else NOT_ESTABLISHED


def cmd_survey(args) -> int:
    g = _group(args.group)
    cat = Path(args.catalog)
    if not cat.is_dir():
        raise UsageError(f"{args.catalog} is not a directory")
    members = [_subgroup(str(p), g) for p in sorted(cat.glob("*.grp"))]
    if not members:
        raise UsageError(f"no .grp files in {args.catalog}")
    policy = Policy(max_c=args.max_c, trials=args.trials, seed=args.seed, workers=args.workers)
    result = survey(g, members, policy)
    out = Path(args.out)
    cert_dir = out.with_name(out.stem + "-certs")
    rows = []
    for r in result.rows:
        path = ""
        if r.result is not None:
            cert_dir.mkdir(parents=True, exist_ok=True)
            cert_path = cert_dir / (re.sub(r"[^A-Za-z0-9]+", "_", r.name).strip("_") + ".cert")
            cert_path.write_text(serialize_certificates(r.result.certificates), encoding="utf-8")
            path = str(cert_path)
        res = r.result
        rows.append([r.name, r.order, r.soluble, r.core_free,
                     "" if res is None else res.lower, "" if res is None else res.upper,
                     "" if res is None else res.exact, path])
    with out.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["name", "order", "soluble", "corefree", "lower", "upper", "exact",
                    "certificate-path"])
        w.writerows(rows)
    s = result.s
    print(f"{result.group}: s over the catalog = "
          f"{s if s is not None else f'{result.s_lower}..{result.s_upper}'}")
    for r in result.rows:
        tag = r.result.describe() if r.result else (
            "not soluble" if not r.soluble else "not core-free")
        print(f"  {r.name} (order {r.order}): {tag}")
    settled = all(r.result is None or r.result.exact for r in result.rows)
    return OK if settled else NOT_ESTABLISHED


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bst", description="Base sizes of coset actions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="order of a permutation group")
    p.add_argument("group")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("base-size", help="base size of G on the cosets of H")
    p.add_argument("group")
    p.add_argument("subgroup")
    p.add_argument("--max-c", type=int, default=5)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--emit-cert", metavar="FILE")
    p.set_defaults(func=cmd_base_size)

    p = sub.add_parser("witness", help="certificate tools")
    wsub = p.add_subparsers(dest="action", required=True)
    v = wsub.add_parser("verify", help="re-verify certificates from scratch")
    v.add_argument("group")
    v.add_argument("subgroup")
    v.add_argument("--cert", required=True)
    v.set_defaults(func=cmd_witness_verify)

    p = sub.add_parser("double-cosets", help="(K,K) double coset census")
    p.add_argument("group")
    p.add_argument("subgroup")
    p.add_argument("--summary", action="store_true")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_double_cosets)

    p = sub.add_parser("qhat", help="exact Q-hat from class data")
    p.add_argument("--data", help="directory of .cls files (default: shipped data)")
    p.add_argument("--group", required=True)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_qhat)

    p = sub.add_parser("report", help="checked Q-hat reports")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--data", help="directory of .cls files (default: shipped data)")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--brief", action="store_true", help="omit per-term inputs")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("survey", help="base sizes over a catalog of subgroups")
    p.add_argument("group")
    p.add_argument("--catalog", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-c", type=int, default=5)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_survey)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    try:
        return args.func(args)
    except StrictModeError as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT
    except (UsageError, FormatError, ClassDataError, IndexCapExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
