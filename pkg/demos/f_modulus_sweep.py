"""
A grid of |F|
=============

|F(sigma + it)| from the Gamma form next to its ceiling-indexed
approximants. Rows print as CSV, ready for a plotting tool.
"""

import sys

from zetalab.cli import write_sweep_csv
from zetalab.criteria import region_predicate, sweep_f_modulus

# past t = 2 pi + 1 the modulus falls with sigma
rows = sweep_f_modulus((0.1, 0.9), (10, 10), 0.1, N1=1000, N2=10**5)
print(" ".join(f"{r.f_modulus_gamma:.4f}" for r in rows))

# low heights: the left region has |F| < 1, the right region |F| > 1
for s in (0.25 + 3j, 0.75 + 3j, 0.25 + 7j):
    v = region_predicate(s)
    print(s, "left" if v.in_left_region else "right" if v.in_right_region else "none", f"{v.f_modulus:.4f}")

write_sweep_csv(sweep_f_modulus((0.3, 0.7), (5, 15), (0.2, 5.0), N1=100, N2=10**4, threads=4), sys.stdout)
