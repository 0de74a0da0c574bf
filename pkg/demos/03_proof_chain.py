"""Numeric re-derivation of the bound constant.

The confidence bound comes from optimizing a Chernoff bound for the
truncated martingale: the cgf of ||M~_n|| is controlled by three pieces
(quadratic, intermediate orders, exponential tail), and the inverse
Legendre transform of each combination is bounded in closed form. This
script replays that chain numerically at a few parameter points: every
recorded inequality must hold, and the assembled coefficient must equal
the constant used by the bounds module.
"""

from fuknagaev import constant_c, proof_chain

for q, D, sigma, u in [(4.0, 1.0, 0.5, 0.1), (2.5, 1.0, 1.0, 0.05),
                       (6.0, 2.0, 5.0, 0.01)]:
    rep = proof_chain(q, D, sigma, u)
    print(f"q = {q}, D = {D}, sigma = {sigma}, u = {u}")
    print(f"  x_hat = {rep.x_hat:.6g}, L = {rep.trunc_L:.6g}, "
          f"alpha = {rep.alpha_qD:.6g}")
    for s in rep.steps:
        gap = s.rhs - s.lhs
        print(f"  {s.name:<12} lhs = {s.lhs:>10.6g}  rhs = {s.rhs:>10.6g}  "
              f"slack = {gap:>10.3g}  {'ok' if s.passed else 'VIOLATED'}")
    match = rep.final_coefficient == constant_c(q, D)
    print(f"  coefficient {rep.final_coefficient:.6g} "
          f"{'==' if match else '!='} constant_c({q}, {D})\n")
