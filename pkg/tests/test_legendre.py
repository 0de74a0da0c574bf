import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar
from scipy.special import gammainc

from fuknagaev.bounds import constant_c
from fuknagaev.errors import DomainError, InvalidQError
from fuknagaev.legendre import (bercu_infimum, cgf_pieces, inverse_legendre,
                                log_poly_check, proof_chain, psi_tail,
                                quadratic_closed_form, rio36_check,
                                truncation_error_bound)


# ---------------------------------------------------------------- psi tail

def test_psi_examples():
    assert psi_tail(2, 1.0) == pytest.approx(math.e - 2.0, rel=1e-13)
    assert psi_tail(4, 2.0) == pytest.approx(math.exp(2) - 1 - 2 - 2 - 8 / 6, rel=1e-13)
    assert psi_tail(7, 0.0) == 0.0


def test_psi_against_incomplete_gamma():
    # sum_{k>=m} t^k/k! = e^t P(m, t) with the regularized lower gamma
    for q in (2.0, 2.5, 3.0, 5.7, 10.0):
        m = math.ceil(q)
        for t in np.geomspace(1e-3, 300.0, 40):
            oracle = math.exp(t) * gammainc(m, t)
            assert psi_tail(q, t) == pytest.approx(oracle, rel=1e-12)


def test_psi_noninteger_q_starts_at_ceiling():
    # 2 < q < 3 starts at k = 3, identical to q = 3
    assert psi_tail(2.5, 0.7) == psi_tail(3, 0.7)


# ---------------------------------------------------------------- cgf pieces

def test_cgf_orders():
    assert cgf_pieces(3.0, 1.0, 1.0).ell1_orders == ()
    assert cgf_pieces(4.0, 1.0, 1.0).ell1_orders == (3,)
    assert cgf_pieces(6.0, 1.0, 1.0).ell1_orders == (3, 4, 5)
    assert cgf_pieces(3.5, 1.0, 1.0).ell1_orders == (3,)


def test_cgf_piece_values():
    p = cgf_pieces(4.0, 1.0, 2.0)
    assert p.ell0(2.0) == 2.0  # t^2/2 at sigma=1
    assert p.ell1(1.5) == pytest.approx(1.5 ** 3 / 6.0, rel=1e-14)
    assert p.ell2(0.5) == pytest.approx(2.0 ** -4 * psi_tail(4.0, 1.0), rel=1e-14)
    p3 = cgf_pieces(3.0, 2.0, 1.0)
    assert p3.ell1(10.0) == 0.0


def test_cgf_pieces_nonnegative_nondecreasing():
    p = cgf_pieces(5.5, 0.7, 1.3)
    ts = np.linspace(0.01, 4.0, 50)
    for piece in (p.ell0, p.ell1, p.ell2):
        vals = [piece(t) for t in ts]
        assert all(v >= 0 for v in vals)
        assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))


# ---------------------------------------------------------------- transform

def test_inverse_legendre_unit_quadratic():
    # inf_t (t^2/2 + x)/t = sqrt(2x), attained at t = sqrt(2x)
    assert inverse_legendre(lambda t: t * t / 2, 2.0) == pytest.approx(2.0, rel=1e-10)
    assert inverse_legendre(lambda t: t * t / 2, 8.0) == pytest.approx(4.0, rel=1e-10)


def test_inverse_legendre_zero_x_limit():
    assert inverse_legendre(lambda t: t * t / 2, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_inverse_legendre_monotone_in_x():
    psi = lambda t: 0.3 * t ** 3
    xs = np.linspace(0.0, 10.0, 25)
    vals = [inverse_legendre(psi, x) for x in xs]
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))


def test_inverse_legendre_subadditive_in_psi():
    f = lambda t: t * t / 2
    g = lambda t: t ** 3 / 6
    for x in (0.3, 1.0, 4.0):
        combined = inverse_legendre(lambda t: f(t) + g(t), x)
        assert combined <= inverse_legendre(f, x) + inverse_legendre(g, x) + 1e-10


def test_inverse_legendre_domain_error():
    with pytest.raises(DomainError):
        inverse_legendre(lambda t: math.inf, 1.0)


def test_quadratic_closed_form_matches_transform():
    for sigma, D, x in [(0.5, 1.0, math.log(20.0)), (1.0, 2.0, 2.0), (3.0, 1.5, 0.7)]:
        closed = quadratic_closed_form(sigma, D, x)
        numeric = inverse_legendre(lambda t: D * D * sigma * sigma * t * t / 2, x)
        assert numeric == pytest.approx(closed, rel=1e-8)
    assert quadratic_closed_form(0.5, 1.0, math.log(20.0)) == pytest.approx(1.2238734, rel=1e-6)
    assert quadratic_closed_form(1.0, 2.0, 2.0) == 4.0
    assert quadratic_closed_form(0.7, 1.0, 0.0) == 0.0
    assert quadratic_closed_form(0.0, 1.0, 5.0) == 0.0


# ---------------------------------------------------------------- appendix B

def _bercu_numeric(c, v, x):
    res = minimize_scalar(lambda t: v * t / (2 * (1 - c * t)) + x / t,
                          bounds=(1e-12, (1 - 1e-12) / c), method="bounded",
                          options={"xatol": 1e-14})
    return res.fun


def test_bercu_examples():
    assert bercu_infimum(1.0, 2.0, 2.0) == pytest.approx(2 + math.sqrt(8), rel=1e-14)
    assert bercu_infimum(0.5, 1.0, 8.0) == pytest.approx(8.0, rel=1e-14)
    # v = 0 degenerates to c*x, the limit as t -> 1/c
    assert bercu_infimum(2.0, 0.0, 3.0) == 6.0


def test_bercu_against_independent_minimizer():
    for c in (0.1, 1.0, 4.0):
        for v in (0.05, 1.0, 30.0):
            for x in (0.2, 2.0, 11.0):
                assert bercu_infimum(c, v, x) == pytest.approx(
                    _bercu_numeric(c, v, x), rel=1e-8)


def test_log_poly_inequality():
    for q in (0.3, 1.0, 4.0, 17.0):
        eq = log_poly_check(math.exp(q), q)
        assert eq.passed and eq.lhs == pytest.approx(eq.rhs, rel=1e-12)
    one = log_poly_check(1.0, 3.0)
    assert one.lhs == 0.0 and one.passed
    rng = np.random.default_rng(17)
    for _ in range(2000):
        x = float(np.exp(rng.uniform(np.log(1e-6), np.log(1e6))))
        q = float(rng.uniform(0.1, 50.0))
        assert log_poly_check(x, q).passed


def test_rio36_point_and_sweep():
    r = rio36_check(3.0, 1.0)
    assert r.lhs == pytest.approx(math.e - 2.5, rel=1e-12)
    assert r.rhs == pytest.approx(math.e * 0.2, rel=1e-14)
    assert r.passed
    # lhs vanishes as x -> 0+
    assert rio36_check(4.0, 1e-8).lhs < 1e-20
    for q in (2.5, 3.0, 4.0, 6.0, 10.0):
        for x in np.geomspace(1e-3, 50.0, 60):
            assert rio36_check(q, float(x)).passed


def test_truncation_error_bound_values():
    assert truncation_error_bound(4.0, 0.1) == pytest.approx(
        10 ** 0.25 * 2 ** -0.75, rel=1e-14)
    assert truncation_error_bound(4.0, 1 - 1e-12) == pytest.approx(2 ** -0.75, rel=1e-9)
    # decreasing in q at fixed u = 0.1 (since 2/u > e makes the exponent work)
    row = [truncation_error_bound(q, 0.1) for q in (2.5, 3.0, 4.0, 6.0, 10.0)]
    assert all(a > b for a, b in zip(row, row[1:]))


# ---------------------------------------------------------------- proof chain

def test_proof_chain_reference_point():
    rep = proof_chain(4.0, 1.0, 0.5, 0.1)
    assert rep.x_hat == pytest.approx(math.log(20.0), rel=1e-15)
    assert rep.trunc_L == pytest.approx(20.0 ** 0.25, rel=1e-15)
    assert rep.alpha_qD == pytest.approx(1.2, rel=1e-15)
    steps = {s.name: s for s in rep.steps}
    assert steps["ell0"].rhs == pytest.approx(
        math.sqrt(2 * math.log(20.0)) * 0.5, rel=1e-14)
    assert rep.all_passed
    assert rep.final_coefficient == constant_c(4.0, 1.0)


def test_proof_chain_low_q_branch_skips_ell1():
    rep = proof_chain(2.5, 1.0, 0.5, 0.1)
    names = [s.name for s in rep.steps]
    assert "ell1+ell2" not in names and "ell0+ell1" not in names
    assert "combined" in names
    assert rep.all_passed


def test_final_coefficient_matches_constant_exactly():
    for q in (2.5, 3.0, 4.0, 6.0):
        for d in (1.0, 2.0):
            assert proof_chain(q, d, 0.7, 0.2).final_coefficient == constant_c(q, d)
    assert proof_chain(3.0, 1.0, 1.0, 0.5).final_coefficient == 41 / 30


def test_proof_chain_rejects_bad_inputs():
    with pytest.raises(InvalidQError):
        proof_chain(2.0, 1.0, 1.0, 0.1)
    with pytest.raises(ValueError):
        proof_chain(4.0, 0.5, 1.0, 0.1)
    with pytest.raises(ValueError):
        proof_chain(4.0, 1.0, 1.0, 1.5)


def test_xhat_over_L_never_exceeds_q_over_e():
    for q in (2.5, 3.0, 4.0, 6.0, 10.0):
        for u in np.geomspace(1e-6, 0.99, 30):
            x_hat = math.log(2 / u)
            L = (2 / u) ** (1 / q)
            assert x_hat / L <= q / math.e + 1e-12


def test_ell1_over_t_squared_nondecreasing():
    p = cgf_pieces(6.0, 0.4, 1.0)
    ts = np.linspace(0.05, 8.0, 80)
    vals = [p.ell1(t) / (t * t) for t in ts]
    assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))
