#!/usr/bin/env python3
"""Regenerate the bundled table of Riemann zeta zero ordinates.

Computes the first ``--count`` ordinates t_k with mpmath at ``--dps``
working digits, writes them ascending at 16 significant digits, and
(optionally) verifies each against an independent oracle: the
Riemann-Siegel Z function must change sign across a 1e-4 window around
every tabulated ordinate.

The default run (2000 zeros at 25 digits, with verification) takes a few
minutes:

    python scripts/generate_zeros.py --out src/psispec/data/zeta_zeros_2000.txt
"""

import argparse
import sys

import mpmath

HEADER = """\
# Ordinates t_k of the first {count} nontrivial zeros of the Riemann zeta
# function (zeta(1/2 + i t_k) = 0), ascending, 16 significant digits.
# Regenerate and re-verify with scripts/generate_zeros.py.
"""


def compute_ordinates(count):
    ordinates = []
    for k in range(1, count + 1):
        t = mpmath.zetazero(k).imag
        ordinates.append(t)
        if k % 100 == 0:
            print(f"  computed {k}/{count}", file=sys.stderr)
    return ordinates


def verify(ordinates, half_window=1e-4):
    """Every ordinate must bracket a sign change of the Riemann-Siegel Z
    function; consecutive ordinates must be strictly ascending."""
    previous = 0.0
    for k, t in enumerate(ordinates, start=1):
        if not t > previous:
            raise AssertionError(f"zero {k}: ordinate {t} not ascending")
        previous = t
        lo = mpmath.siegelz(t - half_window)
        hi = mpmath.siegelz(t + half_window)
        if mpmath.sign(lo) == mpmath.sign(hi):
            raise AssertionError(
                f"zero {k}: no sign change of Z across {t} +/- {half_window}"
            )
        if k % 200 == 0:
            print(f"  verified {k}/{len(ordinates)}", file=sys.stderr)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=2000)
    parser.add_argument("--dps", type=int, default=25,
                        help="mpmath working precision in decimal digits")
    parser.add_argument("--out", default="-",
                        help="output path, or '-' for standard output")
    parser.add_argument("--no-verify", action="store_true",
                        help="skip the Riemann-Siegel sign-change check")
    args = parser.parse_args(argv)

    mpmath.mp.dps = args.dps
    print(f"computing {args.count} ordinates at {args.dps} digits...",
          file=sys.stderr)
    ordinates = compute_ordinates(args.count)
    if not args.no_verify:
        print("verifying against the Riemann-Siegel Z function...",
              file=sys.stderr)
        verify(ordinates)

    lines = [HEADER.format(count=args.count)]
    for t in ordinates:
        lines.append(mpmath.nstr(t, 16, strip_zeros=False) + "\n")
    text = "".join(lines)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.count} ordinates to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
