#!/usr/bin/env python3
"""Writes imaginary parts of the first N nontrivial zeta zeros, one per line.

The library never computes zeros itself; this script only produces the data
file shipped in data/. Zeros come from Arb (python-flint) as rigorous
enclosures; each printed value is the enclosure midpoint to 17 digits.
"""
import argparse
import sys

from flint import acb, ctx


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=10000)
    ap.add_argument("--prec", type=int, default=96, help="working precision in bits")
    ap.add_argument("--block", type=int, default=500)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    ctx.prec = args.prec
    out = sys.stdout if args.out == "-" else open(args.out, "w")
    out.write("# imaginary parts t_n of zeta zeros 1/2 + i t_n, n = 1..%d\n" % args.count)
    out.write("# generated by tools/gen_zeros.py (python-flint %s, Arb enclosures, prec=%d bits)\n"
              % (__import__("flint").__version__, args.prec))
    n = 1
    while n <= args.count:
        num = min(args.block, args.count - n + 1)
        for z in acb.zeta_zeros(n, num):
            t = z.imag
            if t.rad() > 1e-18:
                sys.exit("enclosure too wide at n=%d: %s" % (n, t))
            out.write(t.mid().str(17, radius=False) + "\n")
            n += 1
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
