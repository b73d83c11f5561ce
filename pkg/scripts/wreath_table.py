#!/usr/bin/env python3
"""Print the maximal-subgroup table of Z wr Z/mZ up to a bound.

Usage: python scripts/wreath_table.py [--m M] [--max-n N] [--format csv|json]
"""

import argparse
import json
import sys

from growthlab.groups import WreathCyclic, growth_table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=3, help="cyclic top group order")
    ap.add_argument("--max-n", type=int, default=200, help="largest index")
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    args = ap.parse_args()

    report = growth_table(WreathCyclic(args.m), args.max_n)
    if args.format == "csv":
        lines = ["n,p,k,count,mtriv,mnontriv,exact"]
        for r in report.rows:
            lines.append(
                f"{r.n},{r.p},{r.k},{r.count},{r.mtriv},{r.mnontriv},"
                f"{'true' if r.exact else 'false'}"
            )
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        doc = {
            "group": f"Z wr Z/{args.m}Z",
            "mdeg": report.mdeg.value if report.mdeg else None,
            "rows": [
                {"n": r.n, "count": r.count, "mtriv": r.mtriv, "mnontriv": r.mnontriv}
                for r in report.rows
            ],
        }
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
