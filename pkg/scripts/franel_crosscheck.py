#!/usr/bin/env python3
"""Compare the four Franel constructions and report the first disagreement, if any."""
import sys

from supercong.sequences import FRANEL_METHODS, franel

n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 500
for n in range(n_max + 1):
    vals = {m: franel(n, m) for m in FRANEL_METHODS}
    if len(set(vals.values())) != 1:
        print(f"disagreement at n={n}: {vals}")
        sys.exit(1)
print(f"all {len(FRANEL_METHODS)} methods agree for n <= {n_max}")
