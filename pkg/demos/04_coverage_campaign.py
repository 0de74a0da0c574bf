"""Monte Carlo coverage of the confidence bound.

Simulates heavy-tailed martingale paths and counts how often the running
maximum exceeds the bound threshold B(u). The bound guarantees exceedance
probability at most u; the exact Clopper-Pearson upper limit certifies the
empirical rate. The tightness ratios show how conservative the bound is on
this family (ratios well above 1).
"""

from fuknagaev import CampaignConfig, tightness, verify_confidence
from fuknagaev.spaces import make_euclidean
from fuknagaev.stochastic import symmetric_pareto

config = CampaignConfig(
    dist=symmetric_pareto(make_euclidean(5), alpha=4.5),
    n=50, trials=20_000, q=4.0, D=1.0,
    u_grid=(0.5, 0.2, 0.1, 0.05, 0.01), seed=2024,
)

report = verify_confidence(config)
print("coverage: symmetric Pareto(4.5) increments in R^5, n = 50")
print(f"{'u':>6} {'B(u)':>10} {'exceed':>8} {'rate':>10} {'cp_upper':>10}  verdict")
for r in report.rows:
    print(f"{r.level:>6} {r.bound:>10.3f} {r.exceed:>8} {r.rate:>10.5f} "
          f"{r.cp_upper:>10.5f}  {'pass' if r.passed else 'FAIL'}")
print(f"campaign passed: {report.passed}  ({report.runtime_s:.1f}s)")

tight = tightness(config)
print("\ntightness: bound over empirical running-max quantile")
print(f"{'u':>6} {'B(u)':>10} {'emp Q':>10} {'ratio':>8}")
for r in tight.rows:
    print(f"{r.level:>6} {r.bound:>10.3f} {r.empirical_q:>10.3f} {r.ratio:>8.2f}")
