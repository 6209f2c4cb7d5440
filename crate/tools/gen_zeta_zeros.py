#!/usr/bin/env python3
"""Generate a table of imaginary parts of nontrivial Riemann zeta zeros.

Writes one ordinate per line with 9 decimal places, ascending, suitable for
`rmt zeta-spacings --file <out>` with --offset 0.

Usage: python3 gen_zeta_zeros.py <count> <out_path>

Requires mpmath. Runs on all available cores; expect roughly an hour for
the first 10^4 zeros on a laptop-class machine.
"""

import sys
from multiprocessing import Pool

import mpmath as mp


def zero_im(n: int) -> str:
    mp.mp.dps = 13
    return mp.nstr(mp.zetazero(n).imag, n=20, strip_zeros=False)


def main() -> None:
    count = int(sys.argv[1])
    out_path = sys.argv[2]
    with Pool() as pool:
        zeros = pool.map(zero_im, range(1, count + 1), chunksize=16)
    vals = [float(z) for z in zeros]
    for a, b in zip(vals, vals[1:]):
        if not a < b:
            raise SystemExit(f"non-ascending zeros: {a} >= {b}")
    with open(out_path, "w") as fh:
        for v in vals:
            fh.write(f"{v:.9f}\n")
    print(f"wrote {len(vals)} zeros to {out_path}; last = {vals[-1]:.9f}")


if __name__ == "__main__":
    main()
