import math
from fractions import Fraction

import numpy as np
import pytest

from jackbessel.errors import EvaluationError, InvalidInputError
from jackbessel.quadrature import (
    Box,
    gauss_jacobi,
    integrate_adaptive,
    integrate_box,
    map_to_interval,
    tensor_points,
)


def beta_fn(a: float, b: float) -> float:
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def exact_moment(m: int, k1: Fraction, k2: Fraction) -> float:
    """Independent oracle for int_-1^1 t^m (1-t)^(k1-1) (1+t)^(k2-1) dt.

    Expanding t = 2u - 1 reduces every term to a Beta ratio that is rational
    in the rising factorials, so the alternating sum is done exactly and
    only one transcendental factor remains.
    """
    def rising(a: Fraction, n: int) -> Fraction:
        out = Fraction(1)
        for i in range(n):
            out *= a + i
        return out

    total = Fraction(0)
    for i in range(m + 1):
        total += (
            Fraction(math.comb(m, i))
            * Fraction(2) ** i
            * Fraction(-1) ** (m - i)
            * rising(k2, i)
            / rising(k1 + k2, i)
        )
    lead = 2.0 ** float(k1 + k2 - 1) * beta_fn(float(k2), float(k1))
    return lead * float(total)


def test_rule_examples():
    r = gauss_jacobi(1, 0.0, 0.0)
    assert np.allclose(r.nodes, [0.0]) and np.allclose(r.weights, [2.0])
    r = gauss_jacobi(2, 0.0, 0.0)
    assert np.allclose(sorted(abs(r.nodes)), [1 / math.sqrt(3)] * 2, atol=1e-14)
    assert np.allclose(r.weights, [1.0, 1.0], atol=1e-14)


def test_rule_mass_identity():
    for n in (1, 2, 8, 33):
        for a, b in ((0.0, 0.0), (1.0, 1.0), (-0.5, -0.5), (2.5, -0.9), (-0.4, 1.3)):
            r = gauss_jacobi(n, a, b)
            mass = 2.0 ** (a + b + 1) * beta_fn(a + 1, b + 1)
            assert abs(r.weights.sum() - mass) <= 1e-13 * mass
    r = gauss_jacobi(16, 1.0, 1.0)
    assert abs(r.weights.sum() - 4.0 / 3.0) <= 1e-13


def test_rule_symmetry():
    for n in (5, 16):
        for a in (0.0, -0.5, 1.5):
            r = gauss_jacobi(n, a, a)
            assert np.all(np.abs(r.nodes + r.nodes[::-1]) <= 1e-13)
            assert np.all(np.abs(r.weights - r.weights[::-1]) <= 1e-13 * r.weights.max())


def test_rule_guards():
    with pytest.raises(InvalidInputError):
        gauss_jacobi(0, 0.0, 0.0)
    with pytest.raises(InvalidInputError):
        gauss_jacobi(4, -1.0, 0.0)
    with pytest.raises(InvalidInputError):
        gauss_jacobi(4, 0.0, -1.5)


def test_exactness_against_moment_oracle():
    for n in (1, 2, 3, 5, 8, 12):
        for k1, k2 in ((Fraction(1, 2), Fraction(1, 2)), (Fraction(2), Fraction(1)),
                       (Fraction(7, 2), Fraction(3, 2))):
            r = gauss_jacobi(n, float(k1 - 1), float(k2 - 1))
            for m in range(0, 2 * n):
                got = float(np.dot(r.weights, r.nodes**m))
                want = exact_moment(m, k1, k2)
                scale = max(abs(want), abs(got), r.weights.sum())
                assert abs(got - want) <= 1e-12 * scale, (n, k1, k2, m)


def test_map_to_interval():
    base = gauss_jacobi(8, 0.0, 0.0)
    ident = map_to_interval(base, -1.0, 1.0)
    assert np.allclose(ident.nodes, base.nodes) and np.allclose(ident.weights, base.weights)
    const = map_to_interval(base, 0.0, 2.0)
    assert abs(const.weights.sum() - 2.0) < 1e-13
    # singular weight mass on [0, 1] for k = 0.6 is the Euler Beta value
    sing = map_to_interval(gauss_jacobi(16, -0.4, -0.4), 0.0, 1.0)
    assert abs(sing.weights.sum() - beta_fn(0.6, 0.6)) < 1e-12
    empty = map_to_interval(base, 1.5, 1.5)
    assert empty.nodes.size == 0 and empty.weights.size == 0


def test_integrate_box_examples():
    legendre = gauss_jacobi(8, 0.0, 0.0)
    vol = integrate_box(lambda p: np.ones(p.shape[0]), [(0, 1), (0, 2)], [legendre] * 2)
    assert abs(vol - 2.0) < 1e-13
    sep = integrate_box(lambda p: p[:, 0] * p[:, 1], [(0, 1), (0, 1)], [legendre] * 2)
    assert abs(sep - 0.25) < 1e-13
    w = integrate_box(lambda p: np.ones(p.shape[0]), [(0, 1)], [gauss_jacobi(8, 1.0, 1.0)])
    assert abs(w - 1.0 / 6.0) < 1e-14  # Beta(2, 2)
    degenerate = integrate_box(lambda p: np.ones(p.shape[0]), [(0, 1), (1, 1)], [legendre] * 2)
    assert degenerate == 0.0


def test_integrate_box_error_propagation():
    legendre = gauss_jacobi(4, 0.0, 0.0)

    def bad(p):
        out = np.ones(p.shape[0])
        out[p[:, 0] > 0.5] = np.inf
        return out

    with pytest.raises(EvaluationError) as err:
        integrate_box(bad, [(0, 1)], [legendre])
    assert "node" in str(err.value)


def test_box_validation():
    with pytest.raises(InvalidInputError):
        Box(((1.0, 0.0),))
    assert Box(((0.0, 1.0), (2.0, 2.0))).volume() == 0.0


def test_adaptive_smooth_and_singular():
    val, err, _ = integrate_adaptive(
        lambda p: np.exp(p[:, 0]), [(0.0, 1.0)], order=8, rel_tol=1e-13
    )
    assert abs(val - (math.e - 1.0)) < 1e-12
    assert err < 1e-10
    # weight (1-t)^(-1/2) t^(-1/2) on [0, 1] integrates to pi
    val, _, _ = integrate_adaptive(
        lambda p: np.ones(p.shape[0]), [(0.0, 1.0)], order=6, rel_tol=1e-12,
        exponents=[(-0.5, -0.5)],
    )
    assert abs(val - math.pi) < 1e-11
    # panels away from the box faces carry the weight factor explicitly
    val, _, _ = integrate_adaptive(
        lambda p: np.ones(p.shape[0]), [(0.0, 1.0)], order=6, rel_tol=1e-12,
        exponents=[(-0.5, -0.5)], initial_splits=2,
    )
    assert abs(val - math.pi) < 1e-9


def test_adaptive_kink_converges():
    val, err, _ = integrate_adaptive(
        lambda p: np.abs(p[:, 0] - 0.3) * np.abs(p[:, 1] - 0.7),
        [(0.0, 1.0), (0.0, 1.0)], order=4, rel_tol=1e-7, max_depth=20,
    )
    exact = ((0.3**2 + 0.7**2) / 2) * ((0.7**2 + 0.3**2) / 2)
    assert abs(val - exact) <= max(5e-7 * exact, 2 * err)


def test_doubling_estimate_bounds_refinement():
    # halving-to-requested order difference bounds the next refinement step
    # for a smooth integrand, until roundoff saturates
    f = lambda p: np.exp(3.0 * p[:, 0] * p[:, 1])  # noqa: E731
    legendre = lambda n: [gauss_jacobi(n, 0.0, 0.0)] * 2  # noqa: E731
    box = [(0.0, 1.0), (0.0, 1.5)]
    i2 = integrate_box(f, box, legendre(2))
    i4 = integrate_box(f, box, legendre(4))
    i8 = integrate_box(f, box, legendre(8))
    assert abs(i8 - i4) <= abs(i4 - i2)


def test_tensor_points_ordering_deterministic():
    rules = [map_to_interval(gauss_jacobi(3, 0.0, 0.0), 0, 1),
             map_to_interval(gauss_jacobi(2, 0.0, 0.0), -1, 1)]
    p1, w1 = tensor_points(rules)
    p2, w2 = tensor_points(rules)
    assert np.array_equal(p1, p2) and np.array_equal(w1, w2)
    assert p1.shape == (6, 2)
