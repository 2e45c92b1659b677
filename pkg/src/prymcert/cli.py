"""Command-line front end.

    prymcert check --surface dp3 --divisor 3,1,1,1,1,1,1 --n 1
    prymcert search --surface dp3 --max-a 4 --max-n 2 --out cat.jsonl
    prymcert catalog
    prymcert homology --l 1 --m 1 --parity --generation-test
    prymcert verify cat.jsonl

Divisor coefficients (a, b_1, ..., b_k) mean aH - b_1 E_1 - ... - b_k E_k.
Exit codes: 0 certified / all good, 1 inconclusive or mismatch, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import (
    default_jobs,
    format_golden,
    make_record,
    parse_divisor,
    record_key,
    run_golden,
    search_records,
    self_check,
    to_csv,
    to_json,
)
from .errors import PrymError
from .homology import (
    OddPairingWitness,
    anti_invariant_basis,
    build_model,
    commutator_images,
    generates_anti_invariant,
    parity_obstruction,
)
from .prym import IRREDUCIBLE_SYMPLECTIC
from .surfaces import make_surface

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # argparse already exits with 2 on bad flags; keep the message on stderr
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def _human(record: dict) -> str:
    s, d, num = record["surface"], record["divisor"], record["numerics"]
    name = "p2" if "degree" not in s else f"dp{s['degree']}"
    lines = [
        f"surface   {name}  nikulin {tuple(s['nikulin'])}",
        f"divisor   a={d['a']} b={d['b']} n={d['n']}",
        "numerics  " + "  ".join(f"{k}={v}" for k, v in num.items()),
    ]
    for key, check in record["checks"].items():
        lines.append(f"  {key:<14} {check['status']:<13} {check['detail']}")
    lines.append(f"verdict   {record['verdict']}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    try:
        T = make_surface(args.surface)
        C = parse_divisor(T, args.divisor)
        record = make_record(T, C, args.n, args.assert_non_hyperelliptic)
    except PrymError as exc:
        return _fail(str(exc))
    print(_human(record) if args.human else to_json(record, indent=2))
    return EXIT_OK if record["verdict"] == IRREDUCIBLE_SYMPLECTIC else EXIT_INCONCLUSIVE


def _read_jsonl(path: Path) -> list[dict]:
    if not path.exists():
        return []
    with path.open() as fh:
        return [json.loads(line) for line in fh if line.strip()]


def cmd_search(args) -> int:
    if args.max_a < 0 or args.max_n < 0:
        return _fail("--max-a and --max-n must be non-negative")
    jobs = args.jobs if args.jobs is not None else default_jobs()
    out = Path(args.out)
    try:
        T = make_surface(args.surface)
        existing = _read_jsonl(out) if args.format == "jsonl" else []
        seen = {record_key(r) for r in existing}
        records = search_records(T, args.max_a, args.max_n, jobs=max(1, jobs), skip=seen)
    except PrymError as exc:
        return _fail(str(exc))
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(f"cannot read {out}: {exc}")
    try:
        if args.format == "csv":
            out.write_text(to_csv(records))
        else:
            with out.open("a") as fh:
                for rec in records:
                    fh.write(to_json(rec) + "\n")
    except OSError as exc:
        return _fail(f"cannot write {out}: {exc}")
    print(f"{len(records)} new records written to {out}", file=sys.stderr)
    return EXIT_OK


def cmd_catalog(args) -> int:
    rows = run_golden()
    if args.json:
        payload = [
            {
                "id": r.example.ident,
                "expectedDim": r.example.expected_dim,
                "computedDim": r.computed_dim,
                "expectedVerdict": r.example.expected_verdict,
                "computedVerdict": r.computed_verdict,
                "failed": list(r.failed),
                "match": r.matches,
            }
            for r in rows
        ]
        print(json.dumps(payload, indent=2))
    else:
        print(format_golden(rows))
    bad = [r for r in rows if not r.matches]
    if bad:
        for r in bad:
            print(
                f"deviation: {r.example.ident}: expected ({r.example.expected_dim}, "
                f"{r.example.expected_verdict}), got ({r.computed_dim}, {r.computed_verdict})",
                file=sys.stderr,
            )
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_homology(args) -> int:
    try:
        M = build_model(args.l, args.m)
    except PrymError as exc:
        return _fail(str(exc))
    report: dict = {
        "l": M.l,
        "m": M.m,
        "genus": M.genus,
        "fixedPoints": M.fixed_points,
        "rank": M.rank,
        "antiInvariantRank": len(anti_invariant_basis(M)),
    }
    if args.parity:
        p = parity_obstruction(M)
        if isinstance(p, OddPairingWitness):
            report["parity"] = {"result": "OddPairingWitness", "x": list(p.x), "y": list(p.y), "value": p.value}
        else:
            report["parity"] = {"result": "EvenForm"}
    if args.generation_test:
        g = generates_anti_invariant(M, commutator_images(M))
        report["generationTest"] = {
            "cycles": "commutatorImages",
            "generates": g.generates,
            "index": g.index,
            "rankDeficiency": g.rank_deficiency,
        }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        records = _read_jsonl(Path(args.path))
        diffs = self_check(records)
    except (OSError, json.JSONDecodeError, KeyError, PrymError) as exc:
        return _fail(f"cannot check {args.path}: {exc}")
    for line in diffs:
        print(line)
    print(f"{len(records)} records, {len(diffs)} differences", file=sys.stderr)
    return EXIT_INCONCLUSIVE if diffs else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="prymcert", description=__doc__.split("\n")[0] if __doc__ else None)
    p.add_argument("--version", action="version", version=f"prymcert {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="run the hypothesis checklist on one class")
    c.add_argument("--surface", required=True, help="p2 or dp1..dp8")
    c.add_argument("--divisor", required=True, help="a,b1,..,bk meaning aH - sum b_i E_i")
    c.add_argument("--n", type=int, default=1, help="multiplier (default 1)")
    c.add_argument("--assert-non-hyperelliptic", action="store_true")
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON record (default)")
    fmt.add_argument("--human", action="store_true", help="readable summary")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("search", help="records for all ample classes up to a bound")
    s.add_argument("--surface", required=True)
    s.add_argument("--max-a", type=int, required=True)
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--jobs", type=int, default=None, help="worker processes (default $PRYM_JOBS or 1)")
    s.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    s.set_defaults(func=cmd_search)

    g = sub.add_parser("catalog", help="reproduce the table of known examples")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_catalog)

    h = sub.add_parser("homology", help="homology model of a double cover of curves")
    h.add_argument("--l", type=int, required=True, help="genus of the base curve")
    h.add_argument("--m", type=int, required=True, help="2m + 2 branch points")
    h.add_argument("--generation-test", action="store_true")
    h.add_argument("--parity", action="store_true")
    h.set_defaults(func=cmd_homology)

    v = sub.add_parser("verify", help="recompute the numerics of a JSONL catalog")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
