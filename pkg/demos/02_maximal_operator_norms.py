"""Discrete maximal operators and lower bounds for their norms.

Here Mf(n) is the largest average of f over the windows [1, m] with m >= n.
Estimating its norm on l_p(w) is a nonconvex search.  On two points a dense
angular grid settles it, and on longer sequences the search returns a
witness whose ratio is a lower bound.
"""

import math

import numpy as np

from discrete_rdf import estimate_operator_norm, hardy, maximal, maximal_windows
from discrete_rdf.generators import power_weight

f = np.array([0.0, 0.0, 3.0, 1.0, 0.0])
print("f            ", f)
print("Hardy average", hardy(f).round(4))
print("maximal      ", maximal(f).round(4))
print("first window ", maximal_windows(f))

est = estimate_operator_norm("maximal", np.ones(2), 2)
print("\nN = 2, unweighted, p = 2")
print(f"  grid search  {est.value:.10f}  certified={est.is_certified_upper}")
print(f"  closed form  {math.sqrt((3 + math.sqrt(5)) / 4):.10f}")

print("\nlonger truncations: the estimate is a lower bound with a witness")
for lam in (-0.5, 0.0, 0.5):
    w = power_weight(128, lam)
    e = estimate_operator_norm("maximal", w, 2, budget=10_000, seed=0)
    print(f"  w = k^{lam:<4}  ||M|| >= {e.value:.4f}  via {e.strategy}, {e.evaluations} evaluations")

# The unweighted Hardy operator has norm p' on l_p; the truncated search
# creeps towards 2 at p = 2.
for N in (16, 128, 1024):
    e = estimate_operator_norm("hardy", np.ones(N), 2, budget=20_000)
    print(f"  Hardy, N = {N:>4}:  {e.value:.4f}")
