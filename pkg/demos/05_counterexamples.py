"""Discrete Hardy-type inequalities that fail, and a shifted form that holds.

With plain averages a constant borrowed from the continuous inequality is
not enough.  Shifting the average by one index, so that the k-th term only
sees v(1..k-1), repairs it on the same data.
"""

from discrete_rdf import InequalityInstance, eval_sides, violation_search, zeta_constant
from discrete_rdf.falsifier import reference_instances

for r in reference_instances():
    flag = "violated" if r["violated"] else "holds"
    print(f"{r['name']:<12} lhs {r['lhs']:12.6f} (printed {r['printed_lhs']:<8})"
          f" rhs {r['rhs']:12.6f} (printed {r['printed_rhs']:<8}) {flag}")

inst = InequalityInstance("kl1", 0.2, 1.2, [100, 1, 1, 1], lam=[1, 2, 3, 4])
lhs, rhs, violated = eval_sides(inst)
print(f"\nweighted version, lam = (1,2,3,4): lhs {lhs:.4f}, rhs {rhs:.4f}, violated={violated}")
print("correction constant for lam = 1 on five points:", zeta_constant([1] * 5))

for form in ("kl1_unweighted_pos", "ka1_pos"):
    res = violation_search(form, 4, 0.2, 1.2, budget=10_000, seed=0)
    print(f"\nsearch on {form}: best lhs/rhs = {res.lhs / res.rhs:.4f}")
    print("  v =", res.instance.v.round(3))
