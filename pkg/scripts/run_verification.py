"""Run the full verification pipeline and print a human summary.

Usage: python3 scripts/run_verification.py [--n-max N] [--delta-max D]

Runs the brute-force-vs-closed-form oracle suites, the refined divisor
0-MCF, and the four cover theorems on small primitive parameters,
printing one line per check.  Exit status 1 if anything fails.
"""

import argparse
import sys

from covercount.cli import run as cli_run
from covercount.invariants import verify_theorem


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n-max", type=int, default=6)
    parser.add_argument("--delta-max", type=int, default=3)
    args = parser.parse_args()

    failed = 0
    print("== oracle suites ==")
    failed += cli_run(["verify", "oracles", "--n-max", str(args.n_max)])

    print("== refined divisor 0-MCF ==")
    for a in (1, 2, 3):
        code = cli_run(
            ["verify", "mcf", "--a", str(a), "--m", "1",
             "--delta-max", str(4 * args.delta_max)]
        )
        print(f"sigma sequence a={a}: {'ok' if code == 0 else 'FAIL'}",
              file=sys.stderr)
        failed += code

    print("== cover theorems ==")
    cases = [
        ("ep1_points", 1, (1, (1, -1)), None),
        ("ep1_points", 2, (2, (2, -1, -1)), None),
        ("abelian_points", 2, (1, 1), None),
        ("abelian_points", 3, (2, 1), None),
        ("ep1_lambda", 2, (1, (1, -1)), 1),
        ("abelian_lambda", 3, (1, 1), 2),
    ]
    for (which, g, base, g0) in cases:
        report = verify_theorem(
            which, g, base, max_delta=args.delta_max, g0=g0
        )
        status = "ok" if report.ok else "FAIL"
        print(f"{which} g={g} base={base} g0={g0}: {status}")
        failed += 0 if report.ok else 1

    print("all checks passed" if not failed else f"{failed} checks failed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
