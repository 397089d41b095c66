#!/usr/bin/env python3
"""How hard is it to 2-colour K(C_n) with no monochromatic coplanar K4?

Walks through the closed-form counts, the naive difficulty estimate, and
the exact solution count for n <= 3.

Usage: python demos/01_counting_and_difficulty.py [--count3]
"""

import argparse
import time

from grahamcolour import colourings, cube, estimate


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument(
        "--count3", action="store_true",
        help="also run the 2^28-step exhaustive count for n=3",
    )
    args = parser.parse_args()

    print("Every coplanar 4-subset of cube vertices is one constraint:")
    print("its 6 edges must not all get the same colour.\n")

    print(estimate.render_formula_table(range(2, 15)))
    print()
    print("n_F estimates the fraction of colouring bits consumed by the")
    print("constraints if they were independent; past 100% a solution looks")
    print("impossible (n >= 12), which the search results later contradict.\n")

    # n = 2: small enough to check every one of the 2^6 colourings
    count2 = colourings.count_solutions(2)
    print(f"n=2: {count2} of 64 colourings avoid a monochromatic quad")
    print(f"     exact constrained fraction "
          f"{estimate.format_percent(estimate.exact_fraction(2, count2))}%"
          f" vs naive "
          f"{estimate.format_percent(estimate.naive_row(2).nf_percent)}%")

    if args.count3:
        print("\nn=3: Gray-code walk over all 2^28 colourings...")
        t0 = time.time()
        count3 = colourings.count_solutions(3)
        print(f"     {count3} solutions in {time.time() - t0:.1f}s")
        print(f"     exact constrained fraction "
              f"{estimate.format_percent(estimate.exact_fraction(3, count3))}%"
              f" vs naive "
              f"{estimate.format_percent(estimate.naive_row(3).nf_percent)}%")
    else:
        print("\n(pass --count3 for the exhaustive n=3 count, a few seconds)")


if __name__ == "__main__":
    main()
