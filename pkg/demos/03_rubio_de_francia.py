"""The Rubio de Francia majorant and its dual.

Sum M^s h / (2K)^s and you get a sequence that dominates h.  Its A_1
constant is at most about 2K, and its norm is at most 2||h|| once K bounds
the operator norm.  The dual series replaces M by h -> M(w h) / w.
"""

import numpy as np

from discrete_rdf import (
    RdfConfig, conjugate, estimate_operator_norm, rdf_dual_iterate, rdf_iterate,
)
from discrete_rdf.generators import power_weight

N, p = 64, 2.0
w = power_weight(N, 0.4)
rng = np.random.default_rng(0)
h = rng.uniform(0, 1, N) * (rng.random(N) < 0.3)
h[0] = 1.0

K = estimate_operator_norm("maximal", w, p, budget=5000).value * 1.5
res = rdf_iterate(h, w, p, RdfConfig(K))
print(f"K = {K:.4f} (estimate times 1.5), {res.terms} terms")
print("first term norms:", np.round(res.term_norms[:6], 5))
print(f"||Nh|| = {res.iterate_norm:.5f}   2||h|| = {2 * res.h_norm:.5f}")
print(f"[Nh]_A1 = {res.a1_report.value:.5f}   2K = {2 * K:.5f}")
for name, check in res.checks.items():
    print(f"  check {name}: {'holds' if check['holds'] else 'FAILS'}")

Kd = estimate_operator_norm("dual_maximal", w, conjugate(p), budget=5000).value * 1.5
dual = rdf_dual_iterate(h, w, p, RdfConfig(Kd))
print(f"\ndual series: K = {Kd:.4f}, [w N'h]_A1 = {dual.a1_report.value:.5f}")
print("checks:", {k: v["holds"] for k, v in dual.checks.items()})

# Too small a constant makes the series grow, and the iteration says so.
try:
    rdf_iterate(np.eye(N)[-1], np.ones(N), p, RdfConfig(0.05))
except ValueError as exc:
    print("\nwith K = 0.05:", exc)
