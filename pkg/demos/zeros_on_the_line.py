"""
Zeros on the critical line
==========================

Lambda(1/2 + it) is real, so its sign changes bracket the zeros of zeta.
"""

import numpy as np

from zetalab import real_lambda_on_line, scan_and_refine, zeta_euler_maclaurin

# sign of the completed function on a coarse grid
for t in np.arange(13.0, 15.5, 0.5):
    print(f"t = {t:4.1f}   Lambda = {real_lambda_on_line(t):+.3e}")

# bisect each bracket down to 1e-12
zeros = scan_and_refine(0, 50)
print(f"\n{len(zeros)} zeros below t = 50")
for z in zeros:
    print(f"  #{z.index:2d}  t = {z.ordinate:.12f}   |zeta| = {z.residual:.1e}")

# the eta route finds the same ordinates
check = scan_and_refine(0, 50, method="eta", tol=1e-9)
print("max ordinate gap vs eta scan:", max(abs(a.ordinate - b.ordinate) for a, b in zip(zeros, check)))

# the zeta value at the first one, with its error bound
r = zeta_euler_maclaurin(zeros[0].point)
print(f"zeta(rho_1) = {r.value:.3e}  (bound {r.abs_error_bound:.1e})")
