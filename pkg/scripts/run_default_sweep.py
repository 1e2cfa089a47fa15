#!/usr/bin/env python3
"""Run the default verification sweep and write a JSON report.

    python scripts/run_default_sweep.py --hi 2000 --jobs 4 --out report.json
"""
import argparse
import sys

from supercong.sweep import SweepConfig, emit_report, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lo", type=int, default=5)
    ap.add_argument("--hi", type=int, default=10_000)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    report = run_sweep(SweepConfig(lo=args.lo, hi=args.hi, jobs=args.jobs, no_timing=True))
    data = emit_report(report, "json")
    if args.out == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)
    for cid, row in report.summary().items():
        print(f"{cid:<5} {row['passes']}/{row['primes_checked']}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
