from fractions import Fraction

import numpy as np
import pytest

from jackbessel.errors import InvalidInputError
from jackbessel.jack import jack_construct, jack_eval, jack_eval_many
from jackbessel.sympoly import laplace_beltrami, to_monomial_coeffs

F = Fraction


def test_construction_forced_cases():
    jp = jack_construct((1,), 3, F(2))
    assert dict(jp.coeffs) == {(1,): F(1)}
    jp = jack_construct((1, 1), 2, F(7, 3))
    assert dict(jp.coeffs) == {(1, 1): F(1)}


def test_construction_row_two():
    for k in (F(1, 2), F(1), F(2), F(7, 2)):
        jp = jack_construct((2,), 2, k)
        assert dict(jp.coeffs) == {(2,): F(1), (1, 1): 2 * k / (k + 1)}
        assert jp.eigenvalue == 2 + 4 * k


def test_eval_examples():
    jp = jack_construct((1,), 4, F(1))
    assert jack_eval(jp, (F(1), F(2), F(3), F(4))) == F(10)
    jp = jack_construct((2,), 2, F(2))
    assert jack_eval(jp, (F(1), F(1))) == F(10, 3)
    # compatibility special case: the lower-order monomial vanishes at (t, 0)
    t = F(5, 3)
    assert jack_eval(jp, (t, F(0))) == t**2


def test_eval_float_and_many():
    jp = jack_construct((2, 1), 3, F(1, 2))
    pts = np.array([[0.3, -1.2, 2.0], [1.0, 1.0, 1.0], [0.0, 0.0, 0.0]])
    many = jack_eval_many(jp, pts)
    for row, expected in zip(pts, many):
        assert abs(jack_eval(jp, tuple(row)) - expected) < 1e-12 * max(1.0, abs(expected))


def test_homogeneity_exact():
    jp = jack_construct((3, 1), 3, F(5, 4))
    x = (F(2, 3), F(-1, 7), F(4))
    for c in (F(2), F(1, 3), F(-3)):
        assert jack_eval(jp, tuple(c * xi for xi in x)) == c**4 * jack_eval(jp, x)


def test_permutation_invariance_exact():
    jp = jack_construct((2, 1), 3, F(2))
    x = (F(1, 2), F(3), F(-2))
    vals = {jack_eval(jp, p) for p in [(x[0], x[1], x[2]), (x[2], x[0], x[1]), (x[1], x[2], x[0])]}
    assert len(vals) == 1


def test_eigen_residual_exact():
    for lam, nvars, k in (((2, 1), 3, F(1, 2)), ((3,), 2, F(7, 2)), ((2, 2), 4, F(2))):
        jp = jack_construct(lam, nvars, k)
        poly = jp.assemble()
        assert laplace_beltrami(poly, k) == poly.scale(jp.eigenvalue)


def test_compatibility_coefficient_level():
    for k in (F(1, 2), F(2)):
        hi = jack_construct((2, 1), 4, k)
        lo = jack_construct((2, 1), 3, k)
        specialized = to_monomial_coeffs(hi.assemble().substitute_last_zero())
        assert specialized == dict(lo.coeffs)


def test_dominance_support():
    jp = jack_construct((4,), 3, F(2))
    from jackbessel.chamber import dominance_leq
    assert all(dominance_leq(mu, (4,)) for mu in jp.coeffs)
    assert jp.coeffs[(4,)] == 1


def test_cache_identity():
    a = jack_construct((2, 1), 3, F(2))
    b = jack_construct((2, 1, 0), 3, F(2))
    assert a is b


def test_guards():
    with pytest.raises(InvalidInputError):
        jack_construct((1, 1, 1), 2, F(1))
    with pytest.raises(InvalidInputError):
        jack_construct((2,), 2, F(-1))
    jp = jack_construct((2,), 2, F(1))
    with pytest.raises(InvalidInputError):
        jack_eval(jp, (1.0,))
