"""Command-line front end.

Exit status: 0 on success, 1 when a verification campaign has failures,
2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import kernels
from .betti import DEFAULT_FIELD, FieldSpec, OracleGuard, betti_table, regularity
from .errors import ColonIsUnit, ComplexityGuard, MonoregError
from .harness import Claim, CampaignConfig, run_campaign
from .idealfile import read_ideal
from .monomial import colon_ideal, colon_monomial, intersect, power, product, sum_ideals

VERIFY_CLAIMS = {
    "thm2.1": [Claim.THM_2_1],
    "thm3.2": [Claim.THM_3_2],
    "lem3.1": [Claim.LEM_3_1],
    "lem1.2": [Claim.LEM_1_2],
    "lem1.3": [Claim.LEM_1_3],
    "identities": [Claim.PROOF_INTERSECT, Claim.COLON_CASE],
    "linear": [Claim.LINEAR_PRODUCT],
    "d2": [Claim.D2_PRODUCT],
    "all": list(Claim),
}
FUZZ_CLAIMS = {"power-subadd": [Claim.POWER_SUBADD]}


class UsageError(Exception):
    pass


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _gens_lines(I) -> list[str]:
    names = I.context.names
    return [g.format(names) for g in I.min_gens]


def cmd_reg(args) -> int:
    I = read_ideal(args.ideal)
    r = regularity(I, args.field, OracleGuard(max_gens=args.guard_gens))
    if args.json:
        print(json.dumps({"reg": r, "field": str(args.field)}))
    else:
        print(r)
    return 0


def cmd_betti(args) -> int:
    I = read_ideal(args.ideal)
    table = betti_table(I, args.field, OracleGuard(max_gens=args.guard_gens))
    if args.json:
        print(json.dumps({"field": str(args.field), "vars": list(I.context.names),
                          "betti": table.to_json()}))
    else:
        print("i\tmultidegree\tdim")
        print(table.format(I.context.names))
    return 0


def cmd_op(args) -> int:
    A = read_ideal(args.a)
    if args.op == "power":
        try:
            n = int(args.b)
        except ValueError:
            raise UsageError(f"power needs an integer exponent, got {args.b!r}") from None
        if n < 1:
            raise UsageError("power exponent must be >= 1")
        result = power(A, n)
    else:
        B = read_ideal(args.b)
        if args.op == "product":
            result = product(A, B)
        elif args.op == "sum":
            result = sum_ideals(A, B)
        elif args.op == "intersect":
            result = intersect(A, B)
        else:
            try:
                result = (colon_monomial(A, B.min_gens[0]) if B.num_gens == 1
                          else colon_ideal(A, B))
            except ColonIsUnit:
                if args.json:
                    print(json.dumps({"vars": list(A.context.names), "gens": ["1"], "unit": True}))
                else:
                    print("1")
                    print("colon is the unit ideal", file=sys.stderr)
                return 0
    if args.json:
        print(json.dumps({"vars": list(result.context.names), "gens": _gens_lines(result)}))
    else:
        for line in _gens_lines(result) or ["0"]:
            print(line)
    return 0


def _config(args) -> CampaignConfig:
    return CampaignConfig(
        max_vars=args.max_vars,
        max_gens_per_ideal=args.max_gens,
        max_exponent=args.max_exp,
        max_power_n=args.max_n,
        field=args.field,
        seed=args.seed,
        instance_budget=args.budget,
        parallelism=args.parallel,
        max_support=args.max_support,
        max_u_degree=args.max_u_degree,
        max_factors=args.max_factors,
        cross_field=args.cross_field,
        guard=OracleGuard(max_gens=args.guard_gens),
    )


def _campaign(args, claims) -> int:
    try:
        cfg = _config(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_campaign(cfg, claims)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        print(report.format_table())
    return 0 if report.ok else 1


def cmd_verify(args) -> int:
    return _campaign(args, VERIFY_CLAIMS[args.claim])


def cmd_fuzz(args) -> int:
    return _campaign(args, FUZZ_CLAIMS[args.target])


def _add_field(p):
    p.add_argument("--field", type=_field, default=DEFAULT_FIELD,
                   help="q for the rationals or p:<prime> (default p:32003)")
    p.add_argument("--guard-gens", type=int, default=16, metavar="G",
                   help="largest generator count the oracle accepts (default 16)")


def _add_campaign_flags(p):
    _add_field(p)
    p.add_argument("--max-vars", type=int, default=4)
    p.add_argument("--max-exp", type=int, default=3)
    p.add_argument("--max-gens", type=int, default=3)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-support", type=int, default=2,
                   help="variables per generator in monomial CI families")
    p.add_argument("--max-u-degree", type=int, default=4)
    p.add_argument("--max-factors", type=int, default=3)
    p.add_argument("--budget", type=int, default=None,
                   help="instances per claim (default: exhaustive, 500 random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--cross-field", type=_field, default=None,
                   help="recompute every Betti table over this field as well")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print the JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monoreg", description=__doc__.splitlines()[0])
    parser.add_argument("--backend", choices=["python", "cython"],
                        help="kernel implementation (default: compiled when available)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reg", help="regularity of an ideal")
    p.add_argument("ideal")
    _add_field(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reg)

    p = sub.add_parser("betti", help="multigraded Betti table")
    p.add_argument("ideal")
    _add_field(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("op", help="ideal arithmetic")
    p.add_argument("op", choices=["product", "sum", "intersect", "colon", "power"])
    p.add_argument("a", metavar="A")
    p.add_argument("b", metavar="B|n")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("claim", choices=sorted(VERIFY_CLAIMS))
    _add_campaign_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="search for regularity growth beyond the hypotheses")
    p.add_argument("target", choices=sorted(FUZZ_CLAIMS))
    _add_campaign_flags(p)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend:
        try:
            kernels.set_backend(args.backend)
        except RuntimeError as exc:
            print(f"monoreg: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except (UsageError, MonoregError, OSError) as exc:
        if isinstance(exc, ComplexityGuard):
            print(f"monoreg: {exc} (raise --guard-gens to allow it)", file=sys.stderr)
        else:
            print(f"monoreg: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
