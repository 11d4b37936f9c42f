"""Command-line front end.

Verbs: factor, units, davenport, davenport-group, verify, probe, reduce.
Exit codes: 0 verified / computed, 1 refuted, 2 usage or hypothesis
error, 3 incomplete or outside-hypothesis. ``--format record`` emits
line-delimited JSON with sorted keys and no wall-clock fields, so
identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .gfpoly import Poly, factor as factor_poly
from .parsing import ParseError, parse_poly_expr, parse_sequence
from .semigroup import (
    FiniteSemigroup,
    HypothesisViolation,
    build_abelian_group,
    build_cyclic_with_zero,
    build_product,
    build_quotient_semigroup,
    invariant_factors_from_cyclic_orders,
    units_of,
)
from .verify import (
    STATUS_INCOMPLETE,
    STATUS_OUTSIDE,
    STATUS_REFUTED,
    STATUS_VERIFIED,
    VerificationReport,
    conjecture_probe,
    constructive_reduction,
    proposition_semigroup,
    quadratic_modulus,
    reduce_quadratic_case,
    verify_lemma_product,
    verify_proposition,
    verify_theorem1,
)
from .zerosum import davenport_exact, davenport_group_formula

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_INCOMPLETE = 3

_STATUS_EXIT = {
    STATUS_VERIFIED: EXIT_OK,
    STATUS_REFUTED: EXIT_REFUTED,
    STATUS_INCOMPLETE: EXIT_INCOMPLETE,
    STATUS_OUTSIDE: EXIT_INCOMPLETE,
}


def _emit(args, record: dict, text: str) -> None:
    if args.format == "record":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def _maybe_dump(args, S: FiniteSemigroup) -> None:
    if getattr(args, "dump", False):
        desc = S.describe()
        if args.format == "record":
            print(json.dumps({"semigroup": desc}, sort_keys=True))
        else:
            print(f"semigroup: {desc}")


def _poly_arg(args) -> Poly:
    return parse_poly_expr(args.poly, args.prime)


def _nlist_arg(text: str) -> list[int]:
    try:
        ns = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ParseError(f"expected a comma-separated integer list, got {text!r}", 0)
    if not ns:
        raise ParseError("empty integer list", 0)
    return ns


def _semigroup_from_args(args) -> FiniteSemigroup:
    if getattr(args, "nlist", None):
        ns = _nlist_arg(args.nlist)
        if len(ns) == 1:
            return build_cyclic_with_zero(ns[0])
        return build_product([build_cyclic_with_zero(n) for n in ns])
    if args.prime is None or args.poly is None:
        raise ParseError("need either -p/-f or -n to pick a semigroup", 0)
    return build_quotient_semigroup(args.prime, _poly_arg(args))


# -- verb handlers -----------------------------------------------------------


def _cmd_factor(args) -> int:
    f = _poly_arg(args)
    fac = factor_poly(f)
    _emit(
        args,
        {
            "p": args.prime,
            "f": str(f),
            "unit": fac.unit,
            "factors": [[str(g), m] for g, m in fac.factors],
            "squarefree": fac.is_squarefree,
        },
        f"{f} = {fac}  (squarefree: {'yes' if fac.is_squarefree else 'no'})",
    )
    return EXIT_OK


def _cmd_units(args) -> int:
    f = _poly_arg(args)
    S = build_quotient_semigroup(args.prime, f)
    _maybe_dump(args, S)
    U = units_of(S)
    names = [S.format_element(i) for i in U.elements]
    invariants = list(U.invariant_factors) if U.invariant_factors else None
    structure = (
        " x ".join(f"C_{d}" for d in invariants) if invariants else "structure unknown"
    )
    _emit(
        args,
        {
            "p": args.prime,
            "f": str(f),
            "order": U.order,
            "invariant_factors": invariants,
            "elements": names,
        },
        f"|U| = {U.order}  structure: {structure}\nunits: {', '.join(names)}",
    )
    return EXIT_OK


def _cmd_davenport(args) -> int:
    S = _semigroup_from_args(args)
    _maybe_dump(args, S)
    result = davenport_exact(S, args.budget_ms)
    _emit(args, result.to_record(), result.summary())
    return EXIT_OK if result.complete else EXIT_INCOMPLETE


def _cmd_davenport_group(args) -> int:
    ns = _nlist_arg(args.orders)
    if any(n < 1 for n in ns):
        raise ParseError("cyclic orders must be positive", 0)
    chain = invariant_factors_from_cyclic_orders(ns)
    formula = davenport_group_formula(chain)
    size = 1
    for n in ns:
        size *= n
    search = None
    if size <= 256:
        search = davenport_exact(build_abelian_group(ns), args.budget_ms)
        if formula is not None and search.complete and search.value != formula:
            raise AssertionError(
                f"formula {formula} disagrees with search {search.value}"
            )
    if formula is None and (search is None or not search.complete):
        print(
            "error: no closed form applies and the group exceeds the search cap",
            file=sys.stderr,
        )
        return EXIT_USAGE if search is None else EXIT_INCOMPLETE
    value = formula if formula is not None else search.value
    rec = {
        "orders": ns,
        "invariant_factors": list(chain),
        "value": value,
        "formula": formula,
        "search": search.to_record() if search else None,
    }
    text = (
        f"D({' x '.join(f'C_{n}' for n in ns)}) = {value}"
        f"  invariant factors {list(chain)}"
        f"  formula={formula if formula is not None else 'unknown'}"
        f"  search={'-' if search is None else search.summary()}"
    )
    _emit(args, rec, text)
    return EXIT_OK


def _report_exit(args, report: VerificationReport) -> int:
    _emit(args, report.to_record(), report.summary())
    return _STATUS_EXIT[report.status]


def _cmd_verify(args) -> int:
    if args.claim == "theorem1":
        if args.prime is None or args.poly is None:
            raise ParseError("verify theorem1 needs -p and -f", 0)
        f = _poly_arg(args)
        if args.dump:
            _maybe_dump(args, build_quotient_semigroup(args.prime, f))
        report = verify_theorem1(args.prime, f, budget_ms=args.budget_ms)
    elif args.claim == "lemma":
        if not args.nlist:
            raise ParseError("verify lemma needs -n n1,n2,...", 0)
        ns = _nlist_arg(args.nlist)
        if args.dump:
            _maybe_dump(args, _semigroup_from_args(args))
        report = verify_lemma_product(
            ns,
            budget_ms=args.budget_ms,
            stress=args.stress,
            seed=args.seed,
        )
    else:  # proposition
        if args.prime is None:
            raise ParseError("verify proposition needs -p", 0)
        if args.dump:
            _maybe_dump(args, proposition_semigroup(args.prime))
        report = verify_proposition(
            args.prime,
            budget_ms=args.budget_ms,
            stress=args.stress,
            samples=args.samples,
            seed=args.seed,
        )
    return _report_exit(args, report)


def _cmd_probe(args) -> int:
    report = conjecture_probe(args.prime, _poly_arg(args), budget_ms=args.budget_ms)
    return _report_exit(args, report)


def _cmd_reduce(args) -> int:
    if args.nlist:
        S = _semigroup_from_args(args)
        _maybe_dump(args, S)
        T = parse_sequence(S, args.seq)
        T_prime = constructive_reduction(S, T)
    else:
        if args.prime is None:
            raise ParseError("reduce needs -p (square modulus) or -n (product)", 0)
        if args.poly is not None:
            f = _poly_arg(args)
            if f != quadratic_modulus(args.prime):
                raise ParseError(
                    f"the quadratic reduction is specific to {quadratic_modulus(args.prime)}",
                    0,
                )
        S = proposition_semigroup(args.prime)
        _maybe_dump(args, S)
        T = parse_sequence(S, args.seq)
        T_prime = reduce_quadratic_case(args.prime, T)
    _emit(
        args,
        {
            "input": T.format(),
            "output": T_prime.format(),
            "input_length": len(T),
            "output_length": len(T_prime),
        },
        f"T  = {T.format()}\nT' = {T_prime.format()}  (|T|={len(T)} -> |T'|={len(T_prime)})",
    )
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _add_common(sub, *, prime=False, poly=False, nlist=False, budget=True,
                stress=False, samples=False, seed=False, dump=False):
    if prime:
        sub.add_argument("-p", "--prime", type=int, help="prime modulus p")
    if poly:
        sub.add_argument(
            "-f", "--poly", help="polynomial over F_p, e.g. \"x*(x+1)\" or coeffs:0,1"
        )
    if nlist:
        sub.add_argument(
            "-n", "--nlist", help="comma-separated cyclic orders, e.g. 2,4"
        )
    if budget:
        sub.add_argument(
            "--budget-ms", type=int, default=30_000,
            help="wall-clock budget in milliseconds (default 30000)",
        )
    if stress:
        sub.add_argument(
            "--stress", type=int, default=1000,
            help="random threshold-length sequences to reduce (default 1000)",
        )
    if samples:
        sub.add_argument(
            "--samples", type=int, default=10_000,
            help="Monte-Carlo sample count (default 10000)",
        )
    if seed:
        sub.add_argument(
            "--seed", type=int, default=0, help="random seed (default 0)"
        )
    if dump:
        sub.add_argument(
            "--dump", action="store_true",
            help="print the semigroup description record first",
        )
    sub.add_argument(
        "--format", choices=("text", "record"), default="text",
        help="text for humans, record for line-delimited JSON",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="davenport",
        description=(
            "Davenport constants of finite commutative semigroups: quotient "
            "rings F_p[x]/<f>, adjoined-zero cyclic products, and abelian "
            "groups, with machine-checked verification reports."
        ),
        epilog=(
            "exit codes: 0 verified/computed, 1 refuted, 2 usage error, "
            "3 incomplete or outside-hypothesis"
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("factor", help="factor a polynomial over F_p")
    _add_common(s, prime=True, poly=True, budget=False)
    s.set_defaults(func=_cmd_factor, nlist=None)

    s = sub.add_parser("units", help="unit group of F_p[x]/<f>")
    _add_common(s, prime=True, poly=True, budget=False, dump=True)
    s.set_defaults(func=_cmd_units, nlist=None)

    s = sub.add_parser(
        "davenport",
        help="exact D(S) for a quotient semigroup (-p/-f) or an "
        "adjoined-zero cyclic product (-n)",
    )
    _add_common(s, prime=True, poly=True, nlist=True, dump=True)
    s.set_defaults(func=_cmd_davenport)

    s = sub.add_parser(
        "davenport-group",
        help="D of an abelian group given by cyclic orders (formula + search)",
    )
    s.add_argument("orders", help="comma-separated cyclic orders, e.g. 2,6")
    _add_common(s)
    s.set_defaults(func=_cmd_davenport_group, nlist=None)

    s = sub.add_parser("verify", help="verify a claim instance")
    s.add_argument("claim", choices=("theorem1", "lemma", "proposition"))
    _add_common(
        s, prime=True, poly=True, nlist=True, stress=True, samples=True,
        seed=True, dump=True,
    )
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser(
        "probe", help="conjecture evidence for an arbitrary modulus (no assertion)"
    )
    _add_common(s, prime=True, poly=True, seed=True)
    s.set_defaults(func=_cmd_probe, nlist=None)

    s = sub.add_parser(
        "reduce",
        help="run a constructive reduction on a sequence literal "
        "(-p for the square modulus, -n for adjoined-zero products)",
    )
    s.add_argument("--seq", required=True, help="sequence literal, e.g. \"x;2*4\"")
    _add_common(s, prime=True, poly=True, nlist=True, dump=True)
    s.set_defaults(func=_cmd_reduce)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, HypothesisViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
