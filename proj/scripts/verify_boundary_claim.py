#!/usr/bin/env python3
"""Brute-force check of the boundary case delta1 = 0, delta2 = 1.

In the split-the-budget game the behavioral payoffs at those indices are
p1 = s1 - s2 and p2 = s2. The product p1 * p2 is maximized over the simplex
0 <= s1, 0 <= s2, s1 + s2 <= 100 with disagreement payoffs (0, 0), by a
plain grid search with local refinement, deliberately sharing no code with
the C++ solver. The expected optimum is s* = (75, 25), p* = (50, 25).
"""

import sys


def payoffs(s1, s2):
    return s1 - s2, s2


def product(s1, s2):
    p1, p2 = payoffs(s1, s2)
    if p1 < 0 or p2 < 0:
        return None
    return p1 * p2


def grid_max(lo1, hi1, lo2, hi2, steps, budget=100.0):
    best = (-1.0, 0.0, 0.0)
    for i in range(steps + 1):
        s1 = lo1 + (hi1 - lo1) * i / steps
        for j in range(steps + 1):
            s2 = lo2 + (hi2 - lo2) * j / steps
            if s1 < 0 or s2 < 0 or s1 + s2 > budget:
                continue
            value = product(s1, s2)
            if value is not None and value > best[0]:
                best = (value, s1, s2)
    return best


def main():
    value, s1, s2 = grid_max(0.0, 100.0, 0.0, 100.0, 400)
    # Shrink the search window around the best grid cell a few times.
    radius = 100.0 / 400
    for _ in range(8):
        value, s1, s2 = grid_max(
            max(0.0, s1 - radius), min(100.0, s1 + radius),
            max(0.0, s2 - radius), min(100.0, s2 + radius), 400)
        radius /= 10.0

    p1, p2 = payoffs(s1, s2)
    print(f"argmax: s = ({s1:.6f}, {s2:.6f})")
    print(f"payoffs: p = ({p1:.6f}, {p2:.6f})")
    print(f"product: {value:.6f}")

    ok = (abs(s1 - 75.0) < 1e-3 and abs(s2 - 25.0) < 1e-3
          and abs(p1 - 50.0) < 1e-3 and abs(p2 - 25.0) < 1e-3)
    collapse_claim_product = 0.0
    print()
    if ok:
        print("confirmed: with delta1 = 0 and delta2 = 1 the product "
              "maximum is NOT the disagreement point;")
        print(f"the best agreement earns ({p1:.2f}, {p2:.2f}) versus "
              f"{collapse_claim_product:.2f} at the disagreement point.")
        return 0
    print("UNEXPECTED: brute force found a different optimum")
    return 1


if __name__ == "__main__":
    sys.exit(main())
