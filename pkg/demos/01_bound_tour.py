"""Tour of the bound formulas.

A martingale in a (2,D)-smooth space with summed conditional moments
sigma^2 and C_q^q admits the confidence bound

    max_i ||M_i|| <= D sigma sqrt(2 log(2/u)) + c(q,D) C_q (2/u)^(1/q)

with probability at least 1-u. This script evaluates the constant, the
confidence and tail forms, the iid-sum version, and locates where the
Gaussian and polynomial tail terms swap dominance.
"""

from fuknagaev import (MomentProfile, confidence_bound, constant_c,
                       crossover_scan, independent_sum_bound, tail_bound)

print("the constant c(q, D)")
for q in (2.5, 3.0, 4.0, 6.0):
    for D in (1.0, 2.0):
        print(f"  c({q}, {D}) = {constant_c(q, D):.6g}")

profile = MomentProfile(sigma_sq=1.0, cq_to_q=1.0, q=4.0)
print("\nconfidence thresholds, sigma = C_4 = 1, D = 1")
for u in (0.5, 0.1, 0.01):
    print(f"  B({u}) = {confidence_bound(profile, 1.0, u).value:.6g}")

print("\ntail probabilities at the same profile")
for t in (5.0, 10.0, 20.0):
    print(f"  P[max ||M_i|| > {t}] <= {tail_bound(profile, 1.0, t).value:.6g}")

print("\niid averages: the sqrt term decays like n^-1/2, "
      "the polynomial one like n^-3/4 (q = 4)")
for n in (100, 10_000):
    b = independent_sum_bound(profile, n, 1.0, 0.1).value
    print(f"  n = {n:>6}: B = {b:.6g}")

print("\ndominance crossover of the two tail terms")
small = crossover_scan(profile, 1.0, (1.0, 100.0))
print(f"  sigma = 1: {small!r}  (polynomial term dominates everywhere)")
wide = crossover_scan(MomentProfile(25.0, 1.0, 4.0), 1.0, (1.0, 100.0))
print(f"  sigma = 5: t* = {wide:.4f}  (Gaussian regime below, polynomial above)")
