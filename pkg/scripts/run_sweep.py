#!/usr/bin/env python3
"""Move-invariance sweep over several seeds; prints per-seed reports."""

import argparse
import sys
import time

from singlink.randwalk import sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--count", type=int, default=1000)
    args = ap.parse_args()
    bad = 0
    for seed in range(args.seeds):
        t0 = time.perf_counter()
        rep = sweep(seed=seed, count=args.count)
        dt = time.perf_counter() - t0
        print(f"seed={seed} states={rep.states} "
              f"violations={len(rep.violations)} ({dt:.1f}s)")
        for v in rep.violations[:10]:
            print("   ", v)
        bad += len(rep.violations)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
