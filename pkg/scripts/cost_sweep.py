#!/usr/bin/env python3
"""Sweep every coverage vector with a fixed sector budget and compare the
multiply-XOR cost of the three encoding methods.

The interesting output is the crossover: few deep steps favour the
top-down encoder, many shallow steps favour the bottom-up one.

    python scripts/cost_sweep.py --n 8 --m 2 --r 16 --s 4
"""

import argparse
import sys

from staircodes.cli import _emit_rows, cost_rows
from staircodes.stair import config_new


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=8)
    parser.add_argument("--r", type=int, default=16)
    parser.add_argument("--m", type=int, default=2)
    parser.add_argument("--s", type=int, default=4)
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    args = parser.parse_args()

    base = config_new(args.n, args.r, args.m, (args.s,))
    _emit_rows(cost_rows(base, args.s), args.format, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
