"""The three quantile functionals and their ordering.

Q(u) is the largest (1-u)-quantile, Q1(u) averages Q over the top u mass
(the conditional value-at-risk), and Qinf(u) is the Chernoff-optimized
exponential-moment quantile. They are nested: Q <= Q1 <= Qinf, and the
Chernoff one controls tails exactly: P[X > Qinf(u)] <= u. Plain Q is not
subadditive, which is why the derivation routes through Q1 and Qinf.
"""

import numpy as np

from fuknagaev import (make_sample, q_infinity, quantile_lemma_suite,
                       quantile_triple)
from fuknagaev.quantile import q_not_subadditive_example

rng = np.random.default_rng(7)
sample = make_sample(np.round(rng.standard_normal(500) * 2 + 0.5, 4))

print("nested quantiles of a rounded normal sample")
print(f"{'u':>6} {'Q':>10} {'Q1':>10} {'Qinf':>10} {'tail at Qinf':>14}")
for u in (0.5, 0.25, 0.1, 0.05):
    trip = quantile_triple(sample, u)
    tail = float((sample.values > q_infinity(sample, u).value).mean())
    print(f"{u:>6} {trip.q:>10.4f} {trip.q1:>10.4f} {trip.qinf:>10.4f} {tail:>14.4f}")

print("\nlemma suite on coupled sample pairs")
pairs = [(rng.standard_normal(40), rng.standard_normal(40) + 0.3)
         for _ in range(5)]
report = quantile_lemma_suite(pairs, u_grid=np.arange(1, 10) / 10)
for name in ("ordering_ok", "monotonicity_ok", "subadditive_q1_ok",
             "subadditive_qinf_ok", "chernoff_ok", "submartingale_ok"):
    print(f"  {name:<22} {getattr(report, name)}")

ce = q_not_subadditive_example()
print("\nwhy the plain quantile cannot be used directly:")
print(f"  X = {ce['x_outcomes']}, Y = {ce['y_outcomes']}, u = {ce['u']}")
print(f"  Q_X = {ce['q_x']}, Q_Y = {ce['q_y']}, but Q_(X+Y) = {ce['q_sum']}")
