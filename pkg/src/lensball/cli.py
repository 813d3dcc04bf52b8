"""Command-line entry point: ``lensball {euclid,amap,chains,certify,sweep}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from math import gcd

from lensball.arith import (
    CoprimePair,
    a_map_closed,
    a_map_subtractive,
    bezout_cd,
    euclidean_sequences,
)
from lensball.contfrac import evaluate, matched_chains
from lensball.plumbing import h1_presentation, lens_equiv, lens_parameters
from lensball.stein import contactomorphism_certificate
from lensball.sweep import Emit, Parity, SweepConfig, default_bound, run_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _pq(p: int, q: int) -> CoprimePair:
    if p < 1 or q < 1:
        raise UsageError(f"p and q must be positive, got {p} {q}")
    if gcd(p, q) != 1:
        raise UsageError(f"{p} and {q} are not coprime")
    if not p - q > q:
        hint = f"; try {p} {p - q} (B_{{p,q}} and B_{{p,p-q}} agree)" if p - q < q else ""
        raise UsageError(f"requires p - q > q, got p={p} q={q}{hint}")
    return CoprimePair.pq(p, q)


def _emit(payload: dict, fmt: Emit, text: str) -> str:
    if fmt is Emit.JSON:
        return json.dumps(payload, indent=2, sort_keys=True)
    if fmt is Emit.CSV:
        buf = io.StringIO()
        flat = {k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in payload.items()}
        writer = csv.DictWriter(buf, fieldnames=list(flat), lineterminator="\n")
        writer.writeheader()
        writer.writerow(flat)
        return buf.getvalue().rstrip("\n")
    return text


def _compact(values) -> str:
    return "[" + ",".join(map(str, values)) + "]"


def cmd_euclid(args, fmt: Emit) -> tuple[str, int]:
    data = euclidean_sequences(_pq(args.p, args.q))
    payload = {
        "schema": 1,
        "p": args.p,
        "q": args.q,
        "r": list(data.remainders),
        "s": list(data.quotients),
        "ell": data.ell,
    }
    text = f"r={_compact(payload['r'])} s={_compact(payload['s'])} ell={data.ell}"
    return _emit(payload, fmt, text), EXIT_OK


def cmd_amap(args, fmt: Emit) -> tuple[str, int]:
    a, b = args.a, args.b
    if a < 1 or b < 1 or gcd(a, b) != 1:
        raise UsageError(f"A-map needs positive coprime arguments, got {a} {b}")
    (m, n), _ = a_map_subtractive(a, b)
    payload = {"schema": 1, "a": a, "b": b, "A": [m, n]}
    text = f"A({a},{b}) = ({m},{n})"
    # (a, b) = (p - q, q) is only meaningful for a > b
    if a > b:
        pq = CoprimePair.pq(a + b, b)
        bz = bezout_cd(pq)
        ell = euclidean_sequences(pq).ell
        payload.update({"p": a + b, "q": b, "ell": ell, "c": bz.c, "d": bz.d})
        text += f" ell={ell} c={bz.c} d={bz.d}"
    return _emit(payload, fmt, text), EXIT_OK


def cmd_chains(args, fmt: Emit) -> tuple[str, int]:
    pq = _pq(args.p, args.q)
    b_chain, a_chain = matched_chains(pq)
    mn = a_map_closed(pq).mn
    target = args.p * args.q - 1
    rows = []
    ok = True
    for name, chain in (("B", b_chain), ("A", a_chain)):
        order = h1_presentation(chain).order
        big, small = lens_parameters(chain)
        rel = lens_equiv(big, small, target) if big == args.p**2 else None
        ok = ok and rel is not None and rel.name == "SAME_PRESERVING"
        rows.append(
            {
                "side": name,
                "chain": list(chain),
                "value": str(evaluate(chain)),
                "h1_order": order,
                "lens": [big, small],
                "relation": rel.value if rel else "different-order",
            }
        )
    payload = {"schema": 1, "p": args.p, "q": args.q, "m": mn.first, "n": mn.second, "chains": rows}
    lines = [f"p={args.p} q={args.q} -> (m,n)=({mn.first},{mn.second}), target L({args.p ** 2},{target})"]
    for row in rows:
        lines.append(
            f"{row['side']}-chain [{', '.join(map(str, row['chain']))}] = {row['value']}"
            f"  |H1|={row['h1_order']}  L({row['lens'][0]},{row['lens'][1]})  {row['relation']}"
        )
    return _emit(payload, fmt, "\n".join(lines)), EXIT_OK if ok else EXIT_FAIL


def cmd_certify(args, fmt: Emit) -> tuple[str, int]:
    report = contactomorphism_certificate(_pq(args.p, args.q))
    payload = report.to_dict(verbose=args.verbose)
    lines = [
        f"p={report.p} q={report.q} (m,n)=({report.m},{report.n}) ell={report.ell} c={report.c} d={report.d}",
        f"d3: B {report.d3_b}  A {report.d3_a}",
    ]
    for r in report.labels:
        lines.append(
            f"  label ({r.t0:+d},{r.t1:+d}): Gamma_B={r.gammaB} Gamma_A pulled back={r.gammaA_pulled}"
            f"  {'ok' if r.passed else 'FAIL'}" + (f"  {r.error}" if r.error else "")
        )
    lines.append("PASS" if report.passed else "FAIL")
    return _emit(payload, fmt, "\n".join(lines)), EXIT_OK if report.passed else EXIT_FAIL


def cmd_sweep(args, fmt: Emit) -> tuple[str, int]:
    max_p = args.max_p if args.max_p is not None else default_bound()
    try:
        config = SweepConfig(max_p=max_p, parity_filter=Parity(args.parity), emit=fmt, parallelism=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = run_sweep(config)
    payload = report.to_dict()
    payload.update({"max_p": max_p, "parity": args.parity})
    if fmt is Emit.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["p", "q", "suite", "message"])
        for rec in report.failures:
            for err in rec["errors"]:
                writer.writerow([err["p"], err["q"], err["suite"], err["message"]])
        return buf.getvalue().rstrip("\n"), EXIT_OK if report.ok else EXIT_FAIL
    lines = [
        f"sweep max_p={max_p} parity={args.parity}",
        f"checked={report.checked} passed={report.passed} failures={len(report.failures)}"
        f" spin_labels={report.labels_checked}",
    ]
    for rec in report.failures:
        for err in rec["errors"]:
            lines.append(f"  ({err['p']},{err['q']}) [{err['suite']}] {err['message']}")
    return _emit(payload, fmt, "\n".join(lines)), EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lensball", description="Exact checks for lens space rational balls")
    common = argparse.ArgumentParser(add_help=False)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="emit JSON")
    out.add_argument("--csv", action="store_true", help="emit CSV")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("euclid", parents=[common], help="Euclidean sequences of (p, q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_euclid)

    p = sub.add_parser("amap", parents=[common], help="Yamada's A-map")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_amap)

    p = sub.add_parser("chains", parents=[common], help="both plumbing chains of L(p^2, pq-1)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("certify", parents=[common], help="d3 and Gamma agreement for (p, q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("-v", "--verbose", action="store_true", help="include intermediate values")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("sweep", parents=[common], help="run every check over all pairs with p <= max_p")
    p.add_argument("--max-p", type=int, default=None, help="bound on p (default $LENSBALL_SWEEP_BOUND or 300)")
    p.add_argument("--parity", choices=[x.value for x in Parity], default="all")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    fmt = Emit.JSON if args.json else Emit.CSV if args.csv else Emit.TEXT
    try:
        text, code = args.func(args, fmt)
    except UsageError as exc:
        print(f"lensball {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"lensball {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
