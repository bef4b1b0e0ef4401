"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error (including failing
verifier checks), 3 inconclusive result under --strict, 4 output beyond the
SEMIFACT_MAX_MEM byte cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import DomainError, Inconclusive
from .rationals import format_rat, parse_rat
from .semialgebras import (
    Bounds,
    accp_probe,
    add_atoms,
    add_divisors,
    add_factorizations,
    add_length_set,
    canonical_digits,
    contains,
    format_element,
    mult_atoms,
    mult_divisors,
    mult_factorizations,
    mult_length_set,
    parse_element,
    parse_semialgebra,
)
from . import matrix_monoids as mm
from . import verifier


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(p, matrix=False, element=False, mode=False):
    p.add_argument("--semialgebra", "-s", required=True, help="descriptor, e.g. nat, qnn, cyclic:2/3, conducted:2, exp")
    if element:
        p.add_argument("--element", "-x", required=True, help='element, "n/d" or "e:{q:c,...}"')
    if matrix:
        p.add_argument("--matrix", required=True, help='matrix, e.g. "1,2;0,2"')
    if mode:
        p.add_argument("--mode", choices=["add", "mult"], default="add")
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--max-exp", type=int, default=12)
    p.add_argument("--max-den", type=int, default=64)
    p.add_argument("--max-count", type=int, default=10000)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--strict", action="store_true", help="exit 3 on inconclusive results")


def _bounds(args) -> Bounds:
    for name in ("max_len", "max_exp", "max_den", "max_count", "depth"):
        if getattr(args, name) < 0:
            raise DomainError(f"--{name.replace('_', '-')} must be >= 0")
    return Bounds(args.max_len, args.max_exp, args.max_den, args.max_count, args.depth)


def build_parser() -> _Parser:
    p = _Parser(prog="semifact", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("member", help="membership test")
    _add_common(sp, element=True)

    sp = sub.add_parser("atoms", help="enumerate atoms within bounds")
    _add_common(sp, mode=True)
    sp.add_argument("--below", help="value cap (rational)")

    sp = sub.add_parser("factorize", help="enumerate factorizations of an element")
    _add_common(sp, element=True, mode=True)

    sp = sub.add_parser("lengths", help="set of factorization lengths")
    _add_common(sp, element=True, mode=True)

    sp = sub.add_parser("divisors", help="enumerate divisors of an element")
    _add_common(sp, element=True, mode=True)

    sp = sub.add_parser("digits", help="canonical digit vector (cyclic, prime denominator)")
    _add_common(sp, element=True)

    sp = sub.add_parser("mat-factorize", help="rigid factorizations of a matrix")
    _add_common(sp, matrix=True)
    sp.add_argument("--unit-triangular", action="store_true", help="restrict to additive-type atoms")

    sp = sub.add_parser("mat-atom", help="matrix atom test")
    _add_common(sp, matrix=True)

    sp = sub.add_parser("hfm", help="half-factoriality counterexample matrix")
    _add_common(sp)
    sp.add_argument("--m", type=int, required=True)

    sp = sub.add_parser("apl-probe", help="almost-prime-like counterexample search")
    _add_common(sp, matrix=True)

    sp = sub.add_parser("accp-probe", help="ascending chain search")
    _add_common(sp, element=True, mode=True)

    sp = sub.add_parser("verify", help="run verifier checks, one JSON report per line")
    sp.add_argument("--suite", choices=["all"], default="all")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--format", choices=["json", "table"], default="json")
    sp.add_argument("--strict", action="store_true")
    return p


def _fact_payload(res):
    return {
        "items": [
            {
                "atoms": [[format_element(a), c] for a, c in f.atoms],
                "length": f.length,
            }
            for f in res.items
        ],
        "complete": res.complete,
        "bounds": res.bounds.as_dict(),
    }


def _factor_json(F):
    shape = mm._atom_shape(F)
    if shape[0] == "add":
        return {"type": "add", "pos": [shape[1], shape[2]], "atom": format_rat(shape[3])}
    return {"type": "mult", "pos": [shape[1], shape[1]], "atom": format_rat(shape[2])}


def _run(args) -> tuple[dict | list, int]:
    b = _bounds(args)
    S = parse_semialgebra(args.semialgebra)
    cmd = args.cmd

    if cmd == "member":
        x = parse_element(args.element)
        return {"semialgebra": str(S), "element": format_element(x), "member": contains(S, x, b)}, 0

    if cmd == "atoms":
        below = parse_rat(args.below) if args.below else None
        res = (add_atoms if args.mode == "add" else mult_atoms)(S, b, below=below)
        return {
            "items": [format_element(a) for a in res.items],
            "complete": res.complete,
            "bounds": b.as_dict(),
        }, 0

    if cmd == "factorize":
        x = parse_element(args.element)
        res = (add_factorizations if args.mode == "add" else mult_factorizations)(S, x, b)
        return _fact_payload(res), 0

    if cmd == "lengths":
        x = parse_element(args.element)
        ls, complete = (add_length_set if args.mode == "add" else mult_length_set)(S, x, b)
        return {"lengths": sorted(ls), "complete": complete, "bounds": b.as_dict()}, 0

    if cmd == "divisors":
        x = parse_element(args.element)
        res = (add_divisors if args.mode == "add" else mult_divisors)(S, x, b)
        return {
            "items": [format_element(v) for v in res.items],
            "complete": res.complete,
            "bounds": b.as_dict(),
        }, 0

    if cmd == "digits":
        x = parse_element(args.element)
        return {"digits": list(canonical_digits(S, x))}, 0

    if cmd == "mat-factorize":
        B = mm.parse_matrix(args.matrix, S)
        res = mm.rigid_factorizations(B, b, args.unit_triangular)
        return {
            "items": [
                {"factors": [_factor_json(F) for F in f.factors], "length": f.length}
                for f in res.items
            ],
            "complete": res.complete,
            "bounds": b.as_dict(),
        }, 0

    if cmd == "mat-atom":
        A = mm.parse_matrix(args.matrix, S)
        return {"matrix": mm.format_matrix(A), "atom": mm.is_matrix_atom(A, b)}, 0

    if cmd == "hfm":
        A, long_f, short_f = mm.hfm_counterexample(S, args.m, b)
        return {
            "matrix": mm.format_matrix(A),
            "long": [_factor_json(F) for F in long_f.factors],
            "short": [_factor_json(F) for F in short_f.factors],
            "lengths": [short_f.length, long_f.length],
        }, 0

    if cmd == "apl-probe":
        A = mm.parse_matrix(args.matrix, S)
        got = mm.almost_prime_like_probe(A, b)
        if got is None:
            return {"found": False, "bounds": b.as_dict()}, 0
        return {
            "found": True,
            "x": mm.format_matrix(got[0]),
            "y": mm.format_matrix(got[1]),
        }, 0

    if cmd == "accp-probe":
        x = parse_element(args.element)
        got = accp_probe(S, args.mode, x, args.depth, b)
        if got is None:
            return {"found": False, "depth": args.depth, "bounds": b.as_dict()}, 0
        return {
            "found": True,
            "chain": [format_element(v) for v in got.chain],
            "cofactors": [format_element(v) for v in got.cofactors],
        }, 0

    raise DomainError(f"unknown subcommand {cmd}")


def _render_table(payload) -> str:
    lines = []
    for key, val in payload.items():
        if isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{key}:")
            for row in val:
                lines.append("  " + "  ".join(f"{k}={json.dumps(v)}" for k, v in row.items()))
        elif isinstance(val, list):
            lines.append(f"{key}: " + " ".join(json.dumps(v) for v in val))
        else:
            lines.append(f"{key}: {json.dumps(val)}")
    return "\n".join(lines)


def _emit(text: str) -> int:
    cap = os.environ.get("SEMIFACT_MAX_MEM")
    if cap is not None and len(text.encode()) > int(cap):
        print("semifact: output exceeds SEMIFACT_MAX_MEM", file=sys.stderr)
        return 4
    print(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1

    if args.cmd == "verify":
        reports = verifier.run_all(args.seed)
        if args.format == "table":
            text = "\n".join(
                f"{r.status.ljust(12)} {r.check_name} tested={r.instances_tested}"
                + (f" violations={r.violations}" if r.violations else "")
                for r in reports
            )
        else:
            text = "\n".join(r.to_json() for r in reports)
        rc = _emit(text)
        if rc:
            return rc
        if any(r.status == "Fail" for r in reports):
            return 2
        if args.strict and any(r.status == "Inconclusive" for r in reports):
            return 3
        return 0

    try:
        payload, rc = _run(args)
    except Inconclusive as e:
        payload = {"inconclusive": True, "reason": str(e)}
        if e.bounds is not None:
            payload["bounds"] = e.bounds.as_dict()
        text = json.dumps(payload, sort_keys=True) if args.format == "json" else _render_table(payload)
        out_rc = _emit(text)
        if out_rc:
            return out_rc
        return 3 if args.strict else 0
    except DomainError as e:
        print(f"semifact: {e}", file=sys.stderr)
        return 2

    text = json.dumps(payload, sort_keys=True) if args.format == "json" else _render_table(payload)
    out_rc = _emit(text)
    return out_rc or rc


if __name__ == "__main__":
    sys.exit(main())
