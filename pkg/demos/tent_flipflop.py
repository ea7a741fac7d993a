#!/usr/bin/env python3
"""The tent construction: a limit that is 0 almost everywhere while the
covered point never settles.

Odd stages pile unit tents onto the enumerated sub-intervals of a covering
test; even stages are identically zero.  The L1 norms collapse like
(2n+1)/2^n, so in the L1 sense the stages converge to the zero function and
every Poisson average dies out.  The covered point disagrees: it sees value
at least 1 at every odd stage and 0 at every even stage, forever.
"""

import math

from limitlab import build_ml_poisson, covering_test, poisson_integral


def main():
    tc = build_ml_poisson(covering_test(0, depth=10), s_max=21)

    print(f"{'s':>2} {'L1 norm':>16} {'bound (2n+1)/2^n':>17} {'f_s(0)':>7}")
    for st in tc.stages:
        bound = str(st.l1_bound) if st.s % 2 else "-"
        print(f"{st.s:>2} {str(st.l1):>16} {bound:>17} {str(st.f.eval(0)):>7}")

    print("\nthe value at 0 flips between >= 1 and 0: no limit exists there.")

    y = 2.0 ** -8
    print(f"\nPoisson averages at the covered point, height y = 2^-8:")
    print(f"{'s':>2} {'P[f_s](0,y)':>12} {'L1/(pi y) envelope':>19}")
    for st in tc.stages:
        if st.s % 2 == 1:
            value = float(poisson_integral(st.f, 0.0, y))
            envelope = float(st.l1) / (math.pi * y)
            print(f"{st.s:>2} {value:>12.6f} {envelope:>19.6f}")
    print("the envelope collapses geometrically, so the harmonic extension")
    print("of the limit is identically 0; the covered point's flip-flop is")
    print("invisible to it.")


if __name__ == "__main__":
    main()
