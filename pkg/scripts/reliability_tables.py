#!/usr/bin/env python3
"""System-reliability tables for a 10 PB SATA-class deployment.

Prints the array-count table for sector budgets s = 0..12, then MTTDL
for a selection of codes across a range of unrecoverable-bit-error
probabilities, under the independent or correlated sector-failure model.

    python scripts/reliability_tables.py
    python scripts/reliability_tables.py --model correlated --b1 0.98 --alpha 1.79
"""

import argparse
import sys

from staircodes import reliability as rel
from staircodes.cli import _emit_rows
from staircodes.stair import config_new

CODES = [("rs", ()), ("stair", (1,)), ("stair", (3,)), ("stair", (1, 2)),
         ("stair", (1, 1, 1)), ("sd", (2,)), ("sd", (3,))]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--model", choices=("independent", "correlated"),
                        default="independent")
    parser.add_argument("--b1", type=float, default=0.98)
    parser.add_argument("--alpha", type=float, default=1.79)
    parser.add_argument("--p-bit", default="1e-14,1e-12,1e-10")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    args = parser.parse_args()

    base = dict(user_bytes=10 * 2 ** 50, device_bytes=300 * 2 ** 30,
                model=args.model, b1=args.b1, alpha=args.alpha)

    counts = []
    for s in range(13):
        cfg = config_new(8, 16, 1, () if s == 0 else (s,))
        counts.append({"s": s,
                       "efficiency": round(rel.storage_efficiency(cfg), 6),
                       "n_arrays": rel.num_arrays(rel.ReliabilityParams(**base), cfg)})
    _emit_rows(counts, args.format, sys.stdout)
    print()

    rows = []
    for p_bit in (float(p) for p in args.p_bit.split(",")):
        params = rel.ReliabilityParams(p_bit=p_bit, **base)
        for kind, e in CODES:
            cfg = config_new(8, 16, 1, e)
            rep = rel.mttdl(params, cfg, code=kind)
            rows.append({
                "p_bit": p_bit,
                "code": f"{kind}({','.join(map(str, e))})" if e else kind,
                "p_str": f"{rep.p_str:.6e}",
                "mttdl_sys_hours": f"{rep.mttdl_system_hours:.6e}",
            })
    _emit_rows(rows, args.format, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
