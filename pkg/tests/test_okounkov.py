import math
from fractions import Fraction

import numpy as np
import pytest

from jackbessel.errors import DegenerateInputError, InvalidInputError, SingularEvaluationError
from jackbessel.okounkov import oo_rhs, pi_kernel, u_coeff, vandermonde, verify_oo

F = Fraction


def beta_fn(a, b):
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def test_u_coeff_examples():
    assert abs(u_coeff((0,), 2, 1.0) - 1.0) < 1e-14
    assert abs(u_coeff((1,), 2, 1.0) - 0.5) < 1e-14
    assert abs(u_coeff((0, 0), 3, 2.0) - (1 / 20) * (1 / 6)) < 1e-16
    assert abs(u_coeff((2, 1), 3, 0.5) - beta_fn(3.0, 0.5) * beta_fn(1.5, 0.5)) < 1e-14


def test_u_coeff_guards():
    with pytest.raises(InvalidInputError):
        u_coeff((1, 1), 2, 1.0)  # too many parts
    with pytest.raises(InvalidInputError):
        u_coeff((0,), 2, -1.0)


def test_vandermonde():
    assert vandermonde((2, 1, 0)) == 2.0
    assert vandermonde((3, 3, 1)) == 0.0
    assert vandermonde((1, 0)) == 1.0
    assert vandermonde((5,)) == 1.0


def test_pi_kernel_examples():
    assert pi_kernel((1.0, 0.0), (0.5,), 1.0) == 1.0
    assert abs(pi_kernel((1.0, 0.0), (0.5,), 2.0) - 0.25) < 1e-15
    assert abs(pi_kernel((1.0, 0.0), (0.5,), 0.5) - 2.0) < 1e-14
    with pytest.raises(SingularEvaluationError):
        pi_kernel((1.0, 0.0), (1.0,), 0.5)
    # boundary zeros are fine for k > 1 (factor is 0, not singular)
    assert pi_kernel((1.0, 0.0), (1.0,), 2.0) == 0.0


def test_rhs_normalization_case():
    # empty partition integrates the kernel alone; the Beta masses cancel
    # the normalization exactly
    for lam, k in (((1.7, 0.3), 1.3), ((2.0, 0.5, -1.0), 0.7), ((3.0, 1.0, 0.0), 2.0)):
        val, err, evals = oo_rhs((), lam, k, 48)
        assert abs(val - 1.0) < 1e-12
        assert evals > 0


def test_rhs_linear_case():
    val, _, _ = oo_rhs((1,), (2.0, 0.0), 1.0, 16)
    assert abs(val - 2.0) < 1e-13


def test_rhs_guards():
    with pytest.raises(DegenerateInputError):
        oo_rhs((1,), (1.0, 1.0), 1.0, 16)
    with pytest.raises(InvalidInputError):
        oo_rhs((1, 1, 1), (2.0, 1.0, 0.0), 1.0, 16)
    with pytest.raises(InvalidInputError):
        oo_rhs((1,), (2.0, 0.0), -0.5, 16)


def test_verify_exact_oracle_cases():
    rep = verify_oo((), (1.0, 0.0), 1.0, 16)
    assert rep.rel_error < 1e-12
    rep = verify_oo((3,), (2.0, -1.0), F(1, 2), 64)
    assert rep.rel_error <= 1e-7
    rep = verify_oo((2, 2), (F(3), F(2), F(-5)), F(7, 2), 64)
    assert rep.rel_error <= 1e-7
    rep = verify_oo((2, 1), (F(3), F(1), F(0)), F(2), 64)
    assert rep.lhs == pytest.approx(12.0)  # exact rational evaluation
    assert rep.rel_error <= 1e-9


def test_rhs_homogeneity():
    mu = (2, 1)
    lam = np.array([2.5, 1.0, -0.5])
    k = 1.5
    base, _, _ = oo_rhs(mu, tuple(lam), k, 48)
    for c in (0.5, 2.0):
        scaled, _, _ = oo_rhs(mu, tuple(c * lam), k, 48)
        assert abs(scaled - c ** 3 * base) <= 1e-9 * abs(c ** 3 * base)


def test_k_one_polynomial_exactness():
    # at k = 1 the kernel is 1 and the rule is plain Legendre, so the rule
    # is exact once the polynomial degree fits
    mu = (3, 1)
    lam = (2.0, 0.5, -1.5)
    rep = verify_oo(mu, lam, 1.0, 4)
    assert rep.rel_error <= 1e-10
    rep = verify_oo(mu, lam, 1.0, 3)  # order >= |mu|/2 + 1
    assert rep.rel_error <= 1e-10


def test_error_estimate_tracks_doubling():
    mu = (2,)
    lam = (1.8, 0.3, -1.1)
    k = 2.5
    v16, est16, _ = oo_rhs(mu, lam, k, 16)
    v32, _, _ = oo_rhs(mu, lam, k, 32)
    assert abs(v32 - v16) <= max(est16, 1e-13 * abs(v16))


def test_report_fields_roundtrip():
    rep = verify_oo((1,), (F(2), F(0)), F(1), 32)
    assert rep.mu == (1,)
    assert rep.lam == (2.0, 0.0)
    assert rep.k == 1.0
    assert rep.quad_order == 32
    assert rep.rel_error == abs(rep.lhs - rep.rhs) / max(abs(rep.lhs), 1e-300)
    assert rep.passed and rep.tol == 1e-7
    strict = verify_oo((1,), (F(2), F(0)), F(1), 32, tol=1e-30)
    assert not strict.passed
