"""From one exponent to another.

Suppose a bound ||Tf|| <= phi0([w]) ||f|| holds on l_p0(w) for every A_p0
weight.  Then a bound with an explicit constant follows at any other p.
This script measures phi0 for the Hardy operator over power weights at
p0 = 2, transfers it to p = 3, and compares the result with measured ratios.
"""

import numpy as np

from discrete_rdf import (
    RdfConfig, extrapolation_verify, lemma_l1star_check, lemma_lstar_check,
    transfer_constant,
)
from discrete_rdf.generators import power_family, random_ap_weight

print("transfer constants with phi0(x) = x, K = 2, [w] = 1")
print("  down (3 -> 2):", round(transfer_constant(3, 2, "linear:c=1", 2, 1).value, 4))
print("  up   (2 -> 3):", round(transfer_constant(2, 3, "linear:c=1", 2, 1).value, 4))

rng = np.random.default_rng(3)
w = random_ap_weight(64, 2.0, rng)
h = np.exp(rng.uniform(-2, 0, 64))
a = lemma_lstar_check(w, h, 2.0, 3.0, RdfConfig(3.0))
b = lemma_l1star_check(w, h, 3.0, 2.0, RdfConfig(3.0))
print(f"\nfactorization through the majorant, p < p0: {a.lhs:.4f} <= {a.rhs:.4f}")
print(f"factorization through the dual,    p > p0: {b.lhs:.4f} <= {b.rhs:.4f}")

rep = extrapolation_verify("hardy", power_family(512, 2.0, 9), power_family(512, 3.0, 7),
                           2.0, 3.0, budget=2000)
print(f"\nfitted phi0(x) = {rep.phi0.c:.4f} x^{rep.phi0.a:.4f}")
print(f"{'weight':<24}{'[w]_A3':>9}{'K':>8}{'bound':>9}{'measured':>10}")
for d in rep.predictions:
    print(f"{d['label']:<24}{d['ap_norm']:9.3f}{d['K']:8.3f}{d['predicted']:9.3f}{d['measured']:10.3f}")
print("violations:", len(rep.violations))
