#!/usr/bin/env python3
"""Local throughput comparison of the three encoding methods.

    python scripts/bench_encoders.py --n 16 --r 16 --m 1 --stripe-mib 32
"""

import argparse
import sys

from staircodes.cli import run_bench
from staircodes.stair import config_new


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=16)
    parser.add_argument("--r", type=int, default=16)
    parser.add_argument("--m", type=int, default=1)
    parser.add_argument("--s-values", default="1,2,3,4")
    parser.add_argument("--stripe-mib", type=int, default=32)
    parser.add_argument("--reps", type=int, default=3)
    args = parser.parse_args()

    print("n,r,m,e,method,mult_xors,encode_mib_per_s,chosen")
    for s in (int(x) for x in args.s_values.split(",")):
        cfg = config_new(args.n, args.r, args.m, (s,))
        res = run_bench(cfg, args.stripe_mib * 2 ** 20, reps=args.reps)
        for method, r in res["encode"].items():
            star = "yes" if method == res["chosen"] else ""
            print(f"{cfg.n},{cfg.r},{cfg.m},{s},{method},"
                  f"{r['mult_xors']},{r['mib_per_s']:.1f},{star}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
