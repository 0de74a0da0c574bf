"""Monte Carlo verification campaigns for the confidence bounds.

A campaign simulates many independent martingale paths, compares the
running maximum against the bound threshold at each confidence level, and
certifies the empirical exceedance rate with an exact one-sided
Clopper-Pearson upper limit (exceedance counts near zero are the common
case, where normal approximations are useless).
"""

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.stats import beta
from scipy.optimize import brentq

from .bounds import confidence_bound, constant_c
from .errors import InvalidCountError, InvalidLevelError, InvalidQError
from .quantile import make_sample, quantile_q
from .stochastic import (IncrementDistribution, MomentProfile, moment_profile,
                         running_max_ensemble)


def clopper_pearson_upper(k: int, trials: int, confidence: float) -> float:
    """Exact one-sided upper confidence limit for a binomial proportion."""
    if not 0 <= k <= trials:
        raise InvalidCountError(f"need 0 <= k <= trials, got k={k}, trials={trials}")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence}")
    if k == trials:
        return 1.0
    return float(beta.ppf(confidence, k + 1, trials - k))


@dataclass(frozen=True)
class CampaignConfig:
    dist: IncrementDistribution
    n: int
    trials: int
    q: float
    D: float
    u_grid: tuple
    seed: int
    confidence: float = 0.99

    def __post_init__(self):
        if self.trials < 100:
            raise ValueError(f"trials must be >= 100, got {self.trials}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.q <= 2:
            raise InvalidQError(f"q must exceed 2, got {self.q}")
        if self.D < 1:
            raise ValueError(f"D must be >= 1, got {self.D}")
        if not self.u_grid:
            raise ValueError("u grid must be nonempty")
        for u in self.u_grid:
            if not 1e-6 <= u <= 0.99:
                raise InvalidLevelError(
                    f"campaign levels must lie in [1e-6, 0.99], got {u}")
        if not 0.0 < self.confidence < 1.0:
            raise ValueError(f"confidence must lie in (0, 1), got {self.confidence}")


@dataclass(frozen=True)
class LevelRow:
    level: float
    bound: float
    exceed: int
    trials: int
    rate: float
    cp_upper: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    rows: tuple
    profile: MomentProfile
    config: CampaignConfig
    runtime_s: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def row_dicts(self) -> list:
        """Rows in the fixed serialization order
        level, bound, exceed, trials, rate, cp_upper, verdict."""
        return [{"level": r.level, "bound": r.bound, "exceed": r.exceed,
                 "trials": r.trials, "rate": r.rate, "cp_upper": r.cp_upper,
                 "verdict": r.passed} for r in self.rows]


def verify_confidence(config: CampaignConfig) -> VerificationReport:
    """Exceedance rates of running maxima against B(u) at every level.

    A level passes when the Clopper-Pearson upper limit of the exceedance
    rate stays at or below u. Infinite-moment profiles are rejected before
    any simulation runs.
    """
    start = time.perf_counter()
    profile = moment_profile(config.dist, config.q, config.n)
    rm = running_max_ensemble(config.dist, config.n, config.trials, config.seed)
    rows = []
    for u in config.u_grid:
        b = confidence_bound(profile, config.D, u).value
        exceed = int((rm > b).sum())
        cp = clopper_pearson_upper(exceed, config.trials, config.confidence)
        rows.append(LevelRow(level=float(u), bound=b, exceed=exceed,
                             trials=config.trials,
                             rate=exceed / config.trials, cp_upper=cp,
                             passed=bool(cp <= u)))
    return VerificationReport(rows=tuple(rows), profile=profile, config=config,
                              runtime_s=time.perf_counter() - start)


@dataclass(frozen=True)
class TightnessRow:
    level: float
    bound: float
    empirical_q: float
    ratio: float | None
    bootstrap_se: float
    applicable: bool
    passed: bool


@dataclass(frozen=True)
class TightnessReport:
    rows: tuple
    profile: MomentProfile
    config: CampaignConfig
    runtime_s: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows if r.applicable)

    def row_dicts(self) -> list:
        return [{"level": r.level, "bound": r.bound, "empirical_q": r.empirical_q,
                 "ratio": r.ratio, "bootstrap_se": r.bootstrap_se,
                 "applicable": r.applicable, "verdict": r.passed}
                for r in self.rows]


def tightness(config: CampaignConfig, n_boot: int = 200) -> TightnessReport:
    """Ratio of the bound to the empirical running-max quantile per level.

    The bound dominates the true quantile, so each ratio should be >= 1 up
    to the sampling error of the empirical quantile (bootstrapped SE, three
    sigma). A degenerate zero martingale yields ratio None (not applicable).
    """
    start = time.perf_counter()
    profile = moment_profile(config.dist, config.q, config.n)
    rm = running_max_ensemble(config.dist, config.n, config.trials, config.seed)
    sample = make_sample(rm)
    boot_rng = np.random.default_rng(np.random.SeedSequence(
        entropy=config.seed, spawn_key=(0xB007,)))
    idx = boot_rng.integers(0, len(rm), size=(n_boot, len(rm)))
    rows = []
    for u in config.u_grid:
        b = confidence_bound(profile, config.D, u).value
        emp = quantile_q(sample, u)
        boot_q = np.array([quantile_q(make_sample(rm[row]), u) for row in idx])
        se_q = float(boot_q.std(ddof=1))
        if emp <= 0.0:
            rows.append(TightnessRow(level=float(u), bound=b, empirical_q=emp,
                                     ratio=None, bootstrap_se=se_q,
                                     applicable=False, passed=True))
            continue
        ratio = b / emp
        se_ratio = b * se_q / (emp * emp)
        rows.append(TightnessRow(level=float(u), bound=b, empirical_q=emp,
                                 ratio=ratio, bootstrap_se=se_ratio,
                                 applicable=True,
                                 passed=bool(ratio >= 1.0 - 3.0 * se_ratio)))
    return TightnessReport(rows=tuple(rows), profile=profile, config=config,
                           runtime_s=time.perf_counter() - start)


def crossover_scan(profile: MomentProfile, D: float, bracket: tuple,
                   grid_points: int = 512) -> float | None:
    """Where the Gaussian and polynomial tail terms swap dominance.

    Scans g(t) = 2 exp(-t^2/(8 D^2 sigma^2)) - 2 (2 c C_q / t)^q for a sign
    change on a log grid over the bracket and bisects the last one (the
    dominance switch deepest in the tail). Returns None when the bracket
    contains no sign change, which is a valid outcome: for small sigma the
    polynomial term dominates throughout.
    """
    t_lo, t_hi = bracket
    if not 0 < t_lo < t_hi:
        raise ValueError(f"need 0 < t_lo < t_hi, got {bracket}")
    c = constant_c(profile.q, D)

    def g(t):
        poly = 2.0 * (2.0 * c * profile.cq / t) ** profile.q if profile.cq_to_q > 0 else 0.0
        gauss = 0.0 if profile.sigma_sq == 0.0 else \
            2.0 * math.exp(-t * t / (8.0 * D * D * profile.sigma_sq))
        return gauss - poly

    ts = np.geomspace(t_lo, t_hi, grid_points)
    vals = np.array([g(t) for t in ts])
    sign_change = None
    for i in range(len(ts) - 1):
        if vals[i] == 0.0:
            sign_change = (ts[i], ts[i])
        elif vals[i] * vals[i + 1] < 0:
            sign_change = (ts[i], ts[i + 1])
    if sign_change is None:
        return None
    if sign_change[0] == sign_change[1]:
        return float(sign_change[0])
    return float(brentq(g, sign_change[0], sign_change[1], xtol=1e-12, rtol=1e-14))
