"""Command-line front end.

Exit codes: 0 success, 1 a verification or consistency check failed,
2 bad usage, unparsable input or input outside the map's domain.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from .bijection import InvariantViolation, classify_case, psi, psi_inverse
from .enumerate import (
    ENUMERATION_BOUND,
    BoundExceeded,
    bruteforce_counts,
    count_d_rec1,
    count_d_rec2,
    iter_class,
    make_count_record,
)
from .perm import PermClass, PermutationError, format_cycles, parse_cycles, to_cycle_form
from .verify import GOLDEN_ROWS, GoldenRow, compare_golden, verify_n

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Reported on stderr with exit code 2."""


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _domain_error(e: Exception) -> UsageError:
    return UsageError(f"{type(e).__name__}: {e}")


def cmd_map(args) -> int:
    try:
        c = parse_cycles(args.perm)
        case = classify_case(c)
        sigma = psi(c)
    except PermutationError as e:
        raise _domain_error(e)
    out = format_cycles(sigma, "fixed-point-first")
    if args.structured:
        _emit({
            "input": format_cycles(c),
            "n": c.n,
            "case": case.variant.value,
            "k": case.k,
            "a1": case.a1,
            "output": out,
        })
    else:
        print(out)
    return EXIT_OK


def cmd_invert(args) -> int:
    try:
        c = parse_cycles(args.perm)
        pre = psi_inverse(c)
    except PermutationError as e:
        raise _domain_error(e)
    out = format_cycles(pre)
    if args.structured:
        case = classify_case(pre)
        _emit({
            "input": format_cycles(c, "fixed-point-first"),
            "n": c.n,
            "fixed_point": c.fixed_points[0],
            "case": case.variant.value,
            "k": case.k,
            "a1": case.a1,
            "output": out,
        })
    else:
        print(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if args.max_n > args.bound:
        raise UsageError(f"BoundExceeded: {BoundExceeded(args.max_n, args.bound)}")
    reports = [
        verify_n(n, shard_count=args.jobs, jobs=args.jobs, bound=args.bound)
        for n in range(1, args.max_n + 1)
    ]
    ok = all(r.bijective and r.inverse_ok for r in reports)
    if args.structured:
        _emit({"ok": ok, "max_n": args.max_n, "reports": [r.to_dict() for r in reports]})
    else:
        print("\n\n".join(r.to_text() for r in reports))
        print(f"\n{'PASS' if ok else 'FAIL'}: n=1..{args.max_n}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_count(args) -> int:
    if args.max_n < 0:
        raise UsageError("--max-n must be non-negative")
    rec1, rec2 = count_d_rec1(args.max_n), count_d_rec2(args.max_n)
    records = [
        make_count_record(n, rec1, rec2, bruteforce_counts(n) if n <= args.bound else None)
        for n in range(args.max_n + 1)
    ]
    ok = all(r.consistent for r in records)
    if args.structured:
        _emit({"ok": ok, "bound": args.bound, "records": [r.to_dict() for r in records]})
    else:
        print("n\td_rec1\td_rec2\td_brute\tf_n\tdstar\tfstar\tstatus")
        for r in records:
            brute = r.d_by_method["brute_force"]
            print("\t".join(map(str, [
                r.n, r.d_by_method["recurrence_1"], r.d_by_method["recurrence_2"],
                "skipped" if brute is None else brute,
                r.f_n, r.dstar_n, r.fstar_n, "OK" if r.consistent else "DISAGREE",
            ])))
    return EXIT_OK if ok else EXIT_FAIL


def _load_golden(path: Optional[str]) -> Sequence[GoldenRow]:
    if path is None:
        return GOLDEN_ROWS
    try:
        with open(path, encoding="utf-8") as fh:
            return [GoldenRow(**row) for row in json.load(fh)]
    except (OSError, ValueError, TypeError) as e:
        raise UsageError(f"cannot read golden rows from {path}: {e}")


def cmd_table(args) -> int:
    results = compare_golden(_load_golden(args.golden))
    ok = all(match for _, _, match in results)
    if args.structured:
        _emit({
            "ok": ok,
            "rows": [
                {
                    "input": row.input, "output": row.output, "case": row.case,
                    "k": row.k, "a1": row.a1, "match": match,
                    "golden": {"pi": g.pi, "sigma": g.sigma, "case": g.case, "a1": g.a1},
                }
                for row, g, match in results
            ],
        })
    else:
        for row, g, match in results:
            line = f"{'MATCH' if match else 'MISMATCH'}\t{row.input} -> {row.output}\tcase={row.case}"
            if row.k is not None:
                line += f" k={row.k} a1={row.a1}"
            if not match:
                line += f"\tgolden: {g.pi} -> {g.sigma} case={g.case} a1={g.a1}"
            print(line)
        print(f"{sum(m for _, _, m in results)}/{len(results)} rows match")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_enumerate(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    if args.n > args.bound:
        raise UsageError(f"BoundExceeded: {BoundExceeded(args.n, args.bound)}")
    cls = PermClass(args.cls)
    for p in iter_class(args.n, cls):
        print(format_cycles(to_cycle_form(p)) if p.n else "()")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="derangements",
        description="Map derangements to one-fixed-point permutations and verify the correspondence.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def structured(p):
        p.add_argument("--structured", action="store_true", help="emit one JSON document")

    def bound(p):
        p.add_argument("--bound", type=int, default=ENUMERATION_BOUND,
                       help="largest n enumerated exhaustively (default %(default)s)")

    p = sub.add_parser("map", help="apply psi to a derangement")
    p.add_argument("--perm", required=True, help='cycle notation, e.g. "(1,3)(2,4)"')
    structured(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("invert", help="apply psi^-1 to a one-fixed-point permutation")
    p.add_argument("--perm", required=True, help='cycle notation, e.g. "(2)(1,3,4)"')
    structured(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("verify", help="exhaustively verify the bijection for n=1..max-n")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    structured(p)
    bound(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="derangement counts by recurrence and brute force")
    p.add_argument("--max-n", type=int, required=True)
    structured(p)
    bound(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="recompute the worked example tables")
    p.add_argument("--golden", help="JSON list of rows {pi, sigma, case, a1} to compare against")
    structured(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("enumerate", help="list a class of permutations, one per line")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=[c.value for c in PermClass], default="s")
    bound(p)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as e:
        print(f"internal error: InvariantViolation: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
