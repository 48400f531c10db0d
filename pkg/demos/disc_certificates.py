"""
Nonvanishing of partial sums on discs
=====================================

The argument principle counts zeros of H_N, phi_N, or an affine
combination of H's inside a disc right of the critical line.
"""

from zetalab import ARITHMETIC_MEAN, CombinationParams, certify_disc, h_partial_sum

for t in (15, 25, 35):
    for label, ev, combo in (("H_N", "H_N", None), ("phi_N", "phi_N", None), ("mean", "combination", ARITHMETIC_MEAN)):
        cert = certify_disc(complex(0.75, t), 0.1, ev, combo)
        mins = ", ".join(f"{c.min_modulus:.3f}" for c in cert.per_N)
        print(f"t = {t}  {label:6s} {cert.verdict:24s} min |.| per N: {mins}")

# shifting H_N by its own centre value plants a zero there
c, N = 0.75 + 20j, 1000
cert = certify_disc(c, 0.1, "combination", CombinationParams(perturbation=-h_partial_sum(N, c)), n_values=[N])
print("\nplanted zero:", cert.verdict, "winding", cert.per_N[0].winding_number)
