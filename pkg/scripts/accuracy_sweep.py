#!/usr/bin/env python3
"""Cross-pipeline accuracy sweep for the main contour identity.

For a grid of (s, w) the script evaluates L_f(phi_s^w) by coefficient-series
summation and by the contour formula, and prints the absolute gap.  The two
routes share no code beyond the special-function kernel, so the gap is an
end-to-end accuracy estimate for both.
"""

import argparse
import time

from maassl import PhiSW, l_value, rhs_main_theorem
from maassl.verify import resolve_form


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("form", nargs="?", default="J",
                    help='form label: J, Jsq, or synth:<json>')
    ap.add_argument("--s", type=float, nargs="+",
                    default=[-1.5, -0.5, 0.0, 0.5, 1.0, 2.0])
    ap.add_argument("--w", type=complex, nargs="+",
                    default=[1j, 0.3 + 0.7j, 0.5 + 1j])
    args = ap.parse_args()

    f = resolve_form(args.form)
    worst = 0.0
    print(f"{'s':>6} {'w':>12} {'series':>24} {'contour':>24} {'|gap|':>10}")
    for s in args.s:
        for w in args.w:
            t0 = time.perf_counter()
            lhs = l_value(f, PhiSW(s, w)).value
            rhs = rhs_main_theorem(f, s, w)
            dt = time.perf_counter() - t0
            gap = abs(lhs - rhs)
            worst = max(worst, gap)
            print(f"{s:6.2f} {str(w):>12} {lhs:24.15g} {rhs:24.15g} "
                  f"{gap:10.2e}  ({dt:.2f}s)")
    print(f"\nworst gap: {worst:.3e}")


if __name__ == "__main__":
    main()
