"""
Ceiling-indexed approximants
============================

At a zero rho, |H_f(rho) / H_g(1 - rho)| with f = ceil(A^-1 N^(1/2)) and
g = ceil(B^-1 N^(1/2)) tends to sqrt(A/B). Elsewhere the limit is |F(s)|.
"""

import math

from zetalab import IndexRule, estimate_limit, f_ratio_direct, ratio_approximant, scan_and_refine
from zetalab.approximants import monotonicity_probe

zeros = scan_and_refine(10, 40)

# deviation from sqrt(A/B) = 2 over four decades
for z in zeros[:3]:
    devs = [abs(ratio_approximant(N, z.point, IndexRule(4), IndexRule(1)) - 2) for N in (10**3, 10**4, 10**5, 10**6)]
    print(f"t = {z.ordinate:8.4f}  " + "  ".join(f"{d:.2e}" for d in devs))

# the first zero dips at N = 1e4, where sqrt(N) = 100 makes the ceiling exact
print("index at N=1e4:", math.sqrt(10**4) / 4)

# away from zeros: the extrapolated limit against |F|
s = 0.7 + 20j
est = estimate_limit(s, IndexRule(1.0), IndexRule(1.0))
print(f"\nextrapolated {est.extrapolated:.4f}  vs  |F| {abs(f_ratio_direct(s).value):.4f}  trend {est.trend}")

# common monotone subsequences over a small stencil
rep = monotonicity_probe(0.75 + 25j, schedule=[1000 * 2**k for k in range(7)])
print("increasing chain", rep.increasing_chain, " decreasing chain", rep.decreasing_chain)
