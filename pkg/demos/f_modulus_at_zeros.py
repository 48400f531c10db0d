"""
|F| at the zeros
================

F(s) = zeta(s) / zeta(1 - s). The Gamma form of F stays defined at zeros,
where the direct ratio is 0/0.
"""

from zetalab import (
    check_derivative_ratio,
    check_f_modulus,
    f_ratio_continued,
    f_ratio_direct,
    scan_and_refine,
)

zeros = scan_and_refine(0, 78)

# on the line |F| = 1, at zeros included
for z in zeros[:5]:
    rep = check_f_modulus(z)
    print(f"t = {z.ordinate:10.6f}   ||F| - 1| = {rep.f_modulus_deviation:.1e}   {rep.status}")

# off the line, at the same height, |F| moves away from 1
s = 0.6 + 1j * zeros[0].ordinate
print(f"\n|F({s})| = {abs(f_ratio_continued(s).value):.6f}")

# away from zeros both formulas agree
s = 0.3 + 7j
print(f"direct {abs(f_ratio_direct(s).value):.12f}  vs  Gamma form {abs(f_ratio_continued(s).value):.12f}")

# derivative version: eta^(1) ratio against |(1 - 2^(1-s)) / (1 - 2^s)|
for z in zeros[:3]:
    rep = check_derivative_ratio(z)
    print(f"t = {z.ordinate:10.6f}   ratio {rep.derivative_ratio:.12f}   target {rep.derivative_target:.12f}")
