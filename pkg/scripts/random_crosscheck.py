#!/usr/bin/env python3
"""Cross-check the joint-spectrum engine against the exhaustive subspace
oracle on random modules, and print a short report.

Usage: python scripts/random_crosscheck.py [--trials T] [--seed S]
"""

import argparse
import random
import sys

from growthlab.modules import MatrixAction, count_max_submodules, fiber_mod_p
from growthlab.oracle import oracle_count_max_submodules


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    compared = 0
    for trial in range(args.trials):
        k = rng.randint(1, 4)
        A = tuple(tuple(rng.randint(-3, 3) for _ in range(k)) for _ in range(k))
        m = MatrixAction(k=k, torsion=(), actions=(A,), group_action=False)
        for p in (2, 3):
            if p ** k > 81:
                continue
            fib = fiber_mod_p(m, p)
            for j in range(1, k + 1):
                n = p ** j
                engine = count_max_submodules(m, n)
                oracle = oracle_count_max_submodules(fib, n)
                if engine != oracle:
                    print(
                        f"MISMATCH trial={trial} A={A} n={n}: "
                        f"engine={engine} oracle={oracle}",
                        file=sys.stderr,
                    )
                    return 1
                compared += 1
    print(f"ok: {compared} counts agree across {args.trials} random modules")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
