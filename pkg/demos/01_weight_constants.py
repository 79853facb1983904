"""Truncated class constants of discrete weights.

Power weights k^lam are the basic examples.  Their A_p constant settles to
a closed form as the truncation grows, and a few identities hold exactly for
every truncation.
"""

import numpy as np

from discrete_rdf import (
    a1_norm, ainf_norm, ap_norm, ap_norm_profile, bp_constant, conjugate,
    dual_weight, power_phi,
)
from discrete_rdf.generators import const_weight, loguniform_weight, power_weight

print("A_2 constant of k^0.5 as N grows, against the limit value 4/3")
for N in (10, 100, 1_000, 10_000, 100_000):
    r = ap_norm(power_weight(N, 0.5), 2)
    print(f"  N = {N:>6}:  {r.value:.6f}  (max at window [1, {r.argmax_n}])")
print(f"  formula:     {power_phi(2, 0.5):.6f}")

# Decreasing powers are A_1 weights; the constant approaches 1/(1+lam).
print("\nA_1 constant of k^-0.5:", round(a1_norm(power_weight(10_000, -0.5)).value, 4))

# Duality: the A_{p'} constant of w^{1-p'} is exactly [w]_{A_p}^{p'-1}.
w = loguniform_weight(300, 1e-3, 1e3, seed=1)
p = 2.7
q = conjugate(p)
lhs = ap_norm(dual_weight(w, p), q).value
rhs = ap_norm(w, p).value ** (q - 1)
print(f"\nduality at p = {p}:  {lhs:.12g}  vs  {rhs:.12g}")

# The classes grow with p, and A_inf sits below all of them.
grid = [1.25, 1.5, 2, 3, 5, 8]
prof = [r.value for r in ap_norm_profile(w, grid)]
print("\nA_p profile of a random weight:")
for p_, v in zip(grid, prof):
    print(f"  p = {p_:<5} {v:12.4f}")
print(f"  A_inf     {ainf_norm(w).value:12.4f}")

# B_p of the constant weight: the tail sum is pi^2/6 once the analytic
# remainder beyond N is included.
c = const_weight(1000, 1.0)
print("\nB_2 of the constant weight, N = 1000")
print("  truncated tail:", round(bp_constant(c, 2, analytic_tail=False).value, 6))
print("  analytic tail: ", round(bp_constant(c, 2).value, 6), " pi^2/6 =", round(np.pi ** 2 / 6, 6))
