#!/usr/bin/env python3
"""Per-claim cost of the fast path at a few primes (milliseconds)."""
import argparse
import time

from supercong.claims import CLAIM_IDS, CLAIMS, verify_spec
from supercong.fast import PrimeContext


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("primes", nargs="*", type=int, default=[101, 997, 9973])
    args = ap.parse_args()

    print("claim  " + "".join(f"{p:>10}" for p in args.primes))
    rows = {cid: [] for cid in CLAIM_IDS}
    for p in args.primes:
        ctx = PrimeContext(p)
        for cid in CLAIM_IDS:
            t0 = time.perf_counter()
            verify_spec(CLAIMS[cid], p, ctx)
            rows[cid].append((time.perf_counter() - t0) * 1000)
    for cid, ms in rows.items():
        print(f"{cid:<7}" + "".join(f"{x:>10.2f}" for x in ms))


if __name__ == "__main__":
    main()
