"""Command-line interface: compute, enumerate, verify, export.

Exit codes: 0 on success or verification pass, 1 on verification
failure (a JSON report goes to stdout), 2 on usage errors including
violated enumeration bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from covercount.arith import divisors
from covercount.diagrams import (
    BoundExceededError,
    diagram_to_json,
    enumerate_floor_diagrams,
    enumerate_pearl_diagrams,
)
from covercount.group_algebra import (
    NotDiagonalError,
    element_to_json,
    t_basis_decompose,
)
from covercount.invariants import (
    THEOREMS,
    abelian_invariant,
    ep1_invariant,
    verify_theorem,
)
from covercount.mcf_core import GSequence, check_alpha_mcf, nstar_module
from covercount.refined_divisors import refined_sigma
from covercount.subgroups import (
    cotype_count_bruteforce,
    enumerate_subgroups,
    index_count_bruteforce,
    lattice_json,
    marked_pair_bruteforce,
    marked_pair_count,
    refined_cotype_count,
    refined_index_count,
    subgroup_average,
    t_k_omega_bruteforce,
    torsion_average,
    twisted_pair_bruteforce,
    twisted_pair_count,
)


@dataclass
class Config:
    max_genus: int = 4
    max_degree: int = 8
    max_delta: int = 6
    enumeration_mode: str = "unlabeled_aut"
    workers: int = 1
    output: str = "table"

    def __post_init__(self):
        if min(self.max_genus, self.max_degree, self.max_delta) < 1:
            raise ValueError("bounds must be positive")
        if self.enumeration_mode not in ("unlabeled_aut", "labeled"):
            raise ValueError("enumeration_mode must be unlabeled_aut/labeled")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if self.output not in ("json", "table"):
            raise ValueError("output must be json or table")

    @property
    def aut(self):
        return "unlabeled" if self.enumeration_mode == "unlabeled_aut" else (
            "labeled"
        )


def _fmt_fraction(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _fmt_point(p):
    return f"{p.x}/{p.den} + {p.y}/{p.den}·τ"


def _fmt_element(x):
    """Render in the T-basis when diagonal, else as a point sum."""
    if x.is_zero():
        return "0"
    n = lcm(*(p.den for p in x.terms))
    try:
        coeffs = t_basis_decompose(n, x)
        parts = [
            f"{_fmt_fraction(c)}·T_{k}"
            for k, c in sorted(coeffs.items())
            if c
        ]
        return " + ".join(parts)
    except NotDiagonalError:
        parts = [
            f"{_fmt_fraction(x.coeff(p))}·({_fmt_point(p)})"
            for p in sorted(x.terms, key=lambda q: q.sort_key())
        ]
        return " + ".join(parts)


def _emit_element(x, config):
    if config.output == "json":
        print(json.dumps(element_to_json(x), sort_keys=True))
    else:
        print(_fmt_element(x))


def _parse_int_list(text):
    return tuple(int(part) for part in text.split(","))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="covercount",
        description="Exact group-algebra calculus, refined subgroup counts, "
        "floor/pearl diagram enumeration and multiple cover verification.",
    )
    parser.add_argument("--output", choices=("json", "table"),
                        default="table")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--enumeration-mode",
                        choices=("unlabeled_aut", "labeled"),
                        default="unlabeled_aut")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", help="refined divisor sum")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--a", type=int, required=True)

    p = sub.add_parser("subgroups", help="subgroup lattice of Z_n^2")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("count", help="refined subgroup counting functions")
    p.add_argument("which", choices=("M", "F", "G"))
    p.add_argument("--d1", type=int)
    p.add_argument("--d2", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--omega", type=int)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("diagrams", help="enumerate diagrams")
    p.add_argument("which", choices=("floor", "pearl"))
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--w", type=str)
    p.add_argument("--B", type=str)
    p.add_argument("--g0", type=int)

    p = sub.add_parser("invariant", help="assembled correlated invariants")
    p.add_argument("which", choices=("ep1", "abelian"))
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--w", type=str)
    p.add_argument("--B", type=str)
    p.add_argument("--mode", choices=("points", "lambda"), default="points")
    p.add_argument("--g0", type=int)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("target", choices=("mcf", "theorem", "oracles"))
    p.add_argument("--which", choices=tuple(THEOREMS))
    p.add_argument("--g", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--w", type=str)
    p.add_argument("--B", type=str)
    p.add_argument("--g0", type=int)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--alpha", type=int)
    p.add_argument("--delta-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    return parser


def _cmd_sigma(args, config):
    _emit_element(refined_sigma(args.m, args.delta, args.a), config)
    return 0


def _cmd_subgroups(args, config):
    records = lattice_json(args.n)
    if config.output == "json":
        print(json.dumps(records, sort_keys=True))
    else:
        for rec in records:
            print(
                f"basis {rec['basis']}  cotype {tuple(rec['cotype'])}  "
                f"index {rec['index']}  order {rec['order']}"
            )
    return 0


def _cmd_count(args, config):
    n = args.n
    if args.which == "M":
        if args.d1 is not None and args.d2 is not None:
            value = refined_cotype_count(args.d1, args.d2, n)
        elif args.delta is not None:
            value = refined_index_count(args.delta, n)
        else:
            raise ValueError("count M needs --d1/--d2 or --delta")
    elif args.which == "F":
        if args.d1 is None or args.d2 is None:
            raise ValueError("count F needs --d1 and --d2")
        value = twisted_pair_count(args.d1, args.d2, n)
    else:
        if args.omega is None or args.d1 is None or args.d2 is None:
            raise ValueError("count G needs --omega, --d1 and --d2")
        value = marked_pair_count(args.omega, args.d1, args.d2, n)
    _emit_element(value, config)
    return 0


def _diagram_args(args):
    if args.which == "floor":
        if args.a is None or args.w is None:
            raise ValueError("floor diagrams need --a and --w")
        return ("floor", args.g, args.a, _parse_int_list(args.w))
    if args.B is None:
        raise ValueError("pearl diagrams need --B as '|B|,a'")
    return ("pearl", args.g, None, _parse_int_list(args.B))


def _cmd_diagrams(args, config):
    kind, g, a, data = _diagram_args(args)
    if kind == "floor":
        out = enumerate_floor_diagrams(g, a, data, g0=args.g0,
                                       workers=config.workers)
    else:
        out = enumerate_pearl_diagrams(g, data, g0=args.g0,
                                       workers=config.workers)
    records = [diagram_to_json(d) for d in out]
    if config.output == "json":
        print(json.dumps(records, sort_keys=True))
    else:
        print(f"{len(records)} diagrams")
        for rec in records:
            kinds = ",".join(v["kind"] for v in rec["vertices"])
            print(f"  [{kinds}] a={[v['a'] for v in rec['vertices']]} "
                  f"edges={rec['edges']}")
    return 0


def _cmd_invariant(args, config):
    if args.which == "ep1":
        if args.a is None or args.w is None:
            raise ValueError("invariant ep1 needs --a and --w")
        value = ep1_invariant(args.g, (args.a, _parse_int_list(args.w)),
                              mode=args.mode, g0=args.g0, aut=config.aut,
                              workers=config.workers)
    else:
        if args.B is None:
            raise ValueError("invariant abelian needs --B as '|B|,a'")
        value = abelian_invariant(args.g, _parse_int_list(args.B),
                                  mode=args.mode, g0=args.g0, aut=config.aut,
                                  workers=config.workers)
    _emit_element(value, config)
    return 0


def _cmd_verify_mcf(args, config):
    """0-MCF of the refined divisor sequence delta -> sigma_m(delta * a)."""
    if args.a is None:
        raise ValueError("verify mcf needs --a")
    alpha = 0 if args.alpha is None else args.alpha
    F = GSequence(
        domain=nstar_module(1),
        fn=lambda delta: refined_sigma(args.m, delta, delta * args.a),
    )
    report = check_alpha_mcf(F, alpha, list(range(1, args.delta_max + 1)))
    print(report.to_json())
    return 0 if report.ok else 1


def _cmd_verify_theorem(args, config):
    if args.which is None or args.g is None:
        raise ValueError("verify theorem needs --which and --g")
    if args.which.startswith("ep1"):
        if args.a is None or args.w is None:
            raise ValueError("E x P^1 theorems need --a and --w")
        base = (args.a, _parse_int_list(args.w))
    else:
        if args.B is None:
            raise ValueError("abelian theorems need --B as '|B|,a'")
        base = _parse_int_list(args.B)
    report = verify_theorem(args.which, args.g, base,
                            max_delta=args.delta_max, g0=args.g0,
                            alpha=args.alpha, workers=config.workers)
    print(report.to_json())
    return 0 if report.ok else 1


def _cmd_verify_oracles(args, config):
    suites = []
    nmax = args.n_max

    def cotypes(n):
        return [
            (d1, d2)
            for d1 in divisors(n)
            for d2 in divisors(n)
            if d2 % d1 == 0
        ]

    checked = failed = 0
    for n in range(1, nmax + 1):
        for (d1, d2) in cotypes(n):
            checked += 1
            if refined_cotype_count(d1, d2, n) != cotype_count_bruteforce(
                d1, d2, n
            ):
                failed += 1
    suites.append(("cotype counts M(d1,d2,n)", checked, failed))

    checked = failed = 0
    for n in range(1, nmax + 1):
        for delta in divisors(n * n):
            checked += 1
            if refined_index_count(delta, n) != index_count_bruteforce(
                delta, n
            ):
                failed += 1
    suites.append(("index counts M(delta,n)", checked, failed))

    checked = failed = 0
    for n in range(1, min(nmax, 6) + 1):
        for (d1, d2) in cotypes(n):
            checked += 1
            if twisted_pair_count(d1, d2, n) != twisted_pair_bruteforce(
                d1, d2, n
            ):
                failed += 1
    suites.append(("twisted pair counts F(d1,d2,n)", checked, failed))

    checked = failed = 0
    for n in range(1, min(nmax, 5) + 1):
        for (d1, d2) in cotypes(n):
            for omega in divisors(n):
                checked += 1
                if marked_pair_count(omega, d1, d2, n) != (
                    marked_pair_bruteforce(omega, d1, d2, n)
                ):
                    failed += 1
    suites.append(("marked pair counts G_omega", checked, failed))

    checked = failed = 0
    for n in range(1, min(nmax, 6) + 1):
        for K, _ in enumerate_subgroups(n):
            for omega in divisors(n):
                checked += 1
                if t_k_omega_bruteforce(K, omega) != subgroup_average(
                    K
                ) * torsion_average(omega):
                    failed += 1
    suites.append(("marked subgroup averages T_K(omega)", checked, failed))

    total_failed = 0
    for name, checked, failed in suites:
        total_failed += failed
        print(f"{name}: {checked - failed}/{checked} passed")
    if total_failed and config.output == "json":
        print(json.dumps({"failed": total_failed}, sort_keys=True))
    return 0 if total_failed == 0 else 1


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        config = Config(
            enumeration_mode=args.enumeration_mode,
            workers=args.workers,
            output=args.output,
        )
        if args.command == "sigma":
            return _cmd_sigma(args, config)
        if args.command == "subgroups":
            return _cmd_subgroups(args, config)
        if args.command == "count":
            return _cmd_count(args, config)
        if args.command == "diagrams":
            return _cmd_diagrams(args, config)
        if args.command == "invariant":
            return _cmd_invariant(args, config)
        if args.target == "mcf":
            return _cmd_verify_mcf(args, config)
        if args.target == "theorem":
            return _cmd_verify_theorem(args, config)
        return _cmd_verify_oracles(args, config)
    except BoundExceededError as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
