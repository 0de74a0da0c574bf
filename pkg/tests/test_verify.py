import math

import numpy as np
import pytest
from scipy.stats import binom

from fuknagaev.errors import (InfiniteMomentError, InvalidCountError,
                              InvalidLevelError)
from fuknagaev.spaces import make_euclidean
from fuknagaev.stochastic import (MomentProfile, gaussian, rademacher,
                                  symmetric_pareto)
from fuknagaev.verify import (CampaignConfig, clopper_pearson_upper,
                              crossover_scan, tightness, verify_confidence)

R1 = make_euclidean(1)


# ---------------------------------------------------------------- CP limit

def test_cp_zero_successes_closed_form():
    got = clopper_pearson_upper(0, 1000, 0.99)
    assert got == pytest.approx(1 - 0.01 ** (1 / 1000), rel=1e-10)


def test_cp_all_successes():
    assert clopper_pearson_upper(100, 100, 0.99) == 1.0


def _cp_bisection(k, n, confidence):
    # smallest p with P[Bin(n, p) <= k] <= 1 - confidence
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if binom.cdf(k, n, mid) > 1 - confidence:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_cp_against_binomial_cdf_bisection():
    for k, n in [(5, 100), (1, 50), (17, 400), (0, 10)]:
        assert clopper_pearson_upper(k, n, 0.99) == pytest.approx(
            _cp_bisection(k, n, 0.99), abs=1e-12)


def test_cp_dominates_empirical_rate_and_shrinks_with_n():
    for k, n in [(0, 100), (3, 100), (50, 200)]:
        assert clopper_pearson_upper(k, n, 0.95) >= k / n
    # at fixed k/n the limit tightens as n grows
    seq = [clopper_pearson_upper(5 * m, 100 * m, 0.99) for m in (1, 4, 16)]
    assert seq[0] > seq[1] > seq[2]


def test_cp_rejects_bad_count():
    with pytest.raises(InvalidCountError):
        clopper_pearson_upper(11, 10, 0.99)
    with pytest.raises(InvalidCountError):
        clopper_pearson_upper(-1, 10, 0.99)


# ---------------------------------------------------------------- campaigns

def _small_campaign(**overrides):
    base = dict(dist=rademacher(R1, 1.0), n=50, trials=2000, q=4.0, D=1.0,
                u_grid=(0.5, 0.1), seed=11)
    base.update(overrides)
    return CampaignConfig(**base)


def test_verify_confidence_passes_and_is_conservative():
    report = verify_confidence(_small_campaign())
    assert report.passed
    for row in report.rows:
        assert row.cp_upper <= row.level
        assert row.rate < row.level / 10  # the bound is far from tight here


def test_verify_confidence_deterministic():
    a = verify_confidence(_small_campaign())
    b = verify_confidence(_small_campaign())
    assert a.rows == b.rows


def test_campaign_validation():
    with pytest.raises(InvalidLevelError):
        _small_campaign(u_grid=(0.999999,))
    with pytest.raises(ValueError):
        _small_campaign(trials=50)
    with pytest.raises(ValueError):
        _small_campaign(u_grid=())


def test_infinite_moment_rejected_before_simulation():
    config = _small_campaign(dist=symmetric_pareto(R1, 3.0), trials=10 ** 9)
    # astronomically many trials would hang if simulation started
    with pytest.raises(InfiniteMomentError):
        verify_confidence(config)


def test_tightness_ratios_cover_one():
    report = tightness(_small_campaign(u_grid=(0.5, 0.2, 0.1)))
    assert report.passed
    for row in report.rows:
        assert row.applicable
        assert row.ratio is not None and row.ratio >= 1.0 - 3 * row.bootstrap_se


def test_tightness_degenerate_martingale_not_applicable():
    report = tightness(_small_campaign(dist=gaussian(R1, 0.0), trials=200,
                                       u_grid=(0.5,)))
    row = report.rows[0]
    assert not row.applicable and row.ratio is None
    assert report.passed  # vacuous but well-defined


def test_tightness_rows_serialize_to_csv(tmp_path):
    from fuknagaev.cli import emit_report
    report = tightness(_small_campaign(u_grid=(0.5, 0.1)))
    path = tmp_path / "tightness.csv"
    emit_report({"config": {"dist": "rademacher"},
                 "rows": report.row_dicts(),
                 "meta": {"tool": "fuknagaev", "subcommand": "tightness",
                          "seed": report.config.seed}}, "csv", str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "level,bound,empirical_q,ratio,bootstrap_se,applicable,verdict"
    assert len(lines) == 3


# ---------------------------------------------------------------- crossover

def test_crossover_absent_when_polynomial_dominates():
    prof = MomentProfile(sigma_sq=1.0, cq_to_q=1.0, q=4.0)
    assert crossover_scan(prof, 1.0, (1.0, 100.0)) is None


def test_crossover_found_for_large_sigma():
    prof = MomentProfile(sigma_sq=25.0, cq_to_q=1.0, q=4.0)
    t_star = crossover_scan(prof, 1.0, (30.0, 50.0))
    assert t_star is not None and 30 < t_star < 50
    c = 1 / 8 + 1 / 5 + 1 + 4 / 3
    residual = 2 * math.exp(-t_star ** 2 / 200) - 2 * (2 * c / t_star) ** 4
    assert abs(residual) < 1e-12


def test_crossover_vanishing_sigma():
    prof = MomentProfile(sigma_sq=0.0, cq_to_q=1.0, q=4.0)
    assert crossover_scan(prof, 1.0, (1.0, 100.0)) is None
