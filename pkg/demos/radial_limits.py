#!/usr/bin/env python3
"""Radial limits of the step construction: fine at generic points, stuck at
the covered point.

The construction vanishes on every stage of a nested test around 0, so the
boundary value at 0 is 0.  But the stages shrink so fast that the Poisson
averages at 0 keep seeing the bulk value instead: the radial limit stays
above 3(2 - 2^-K)/(5 pi) while the boundary value is 0.
"""

import math
from fractions import Fraction

from limitlab import (build_schnorr_poisson, covering_test, nest_tail,
                      radial_trace)


def main():
    point = Fraction(0)
    test = nest_tail(covering_test(point, depth=16))
    sc = build_schnorr_poisson(test, m_max=14)

    print("stage bookkeeping (all comparisons exact rationals):")
    print(f"{'m':>2} {'mass':>14} {'mass bound':>12} {'incr L1':>14} {'incr bound':>12}")
    for st in sc.stages[:8]:
        print(f"{st.m:>2} {str(st.mass):>14} {str(st.mass_bound):>12} "
              f"{str(st.increment_l1):>14} {str(st.increment_bound):>12}")

    deep = sc.stages[-1].f
    floor = 3 * (2 - 2 ** -1) / (5 * math.pi)
    print(f"\nboundary value at the covered point: {sc.limit_value(point)}")
    print(f"radial floor 3(2-2^-1)/(5 pi) = {floor:.4f}")
    print("\nradial trace at the covered point 0:")
    for e in radial_trace(deep, float(point), [2.0 ** -j for j in (2, 6, 10, 14)]).entries:
        print(f"  y = 2^{int(math.log2(e.y)):>3d}   P[f](0, y) = {e.value:.5f}")
    print("values stay near 2, far above the floor, nowhere near 0.")

    generic = Fraction(1, 3)
    print(f"\nboundary value at the generic point {generic}: "
          f"{sc.limit_value(generic)}")
    print(f"radial trace at {generic}:")
    for e in radial_trace(deep, float(generic), [2.0 ** -j for j in (2, 6, 10, 14)]).entries:
        print(f"  y = 2^{int(math.log2(e.y)):>3d}   P[f](1/3, y) = {e.value:.5f}")
    print("here the trace settles on the boundary value, as it should")
    print("everywhere off the covered stages.")


if __name__ == "__main__":
    main()
