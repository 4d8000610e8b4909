import itertools
from fractions import Fraction

import numpy as np
import pytest

from jackbessel.chamber import (
    ChamberPoint,
    Multiplicity,
    Partition,
    dominance_leq,
    in_convex_hull,
    interlace_check,
    partitions_of,
    project_zero_sum,
    sort_descending,
)
from jackbessel.errors import InvalidInputError


def test_sort_descending_examples():
    pt, perm = sort_descending((1, 3, 2))
    assert pt.coords == (3, 2, 1)
    assert tuple((1, 3, 2)[i] for i in perm) == (3, 2, 1)
    pt, perm = sort_descending((0, 0, 0))
    assert pt.coords == (0, 0, 0)
    assert perm == (0, 1, 2)  # stable tie-break by original index
    pt, _ = sort_descending((-1, 1, 0))
    assert pt.coords == (1, 0, -1)


def test_sort_descending_idempotent():
    rng = np.random.default_rng(3)
    for _ in range(20):
        v = tuple(rng.normal(size=4))
        once, _ = sort_descending(v)
        twice, perm = sort_descending(once.coords)
        assert twice.coords == once.coords
        assert perm == (0, 1, 2, 3)


def test_sort_descending_rejects_non_finite():
    with pytest.raises(InvalidInputError):
        sort_descending((1.0, float("nan")))
    with pytest.raises(InvalidInputError):
        sort_descending((float("inf"), 0.0))


def test_chamber_point_requires_sorted():
    with pytest.raises(InvalidInputError):
        ChamberPoint((1.0, 2.0))


def test_project_zero_sum():
    assert project_zero_sum((1, 0, 0)) == (Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3))
    v = (Fraction(1), Fraction(-2), Fraction(1))
    assert project_zero_sum(v) == v  # already zero-sum
    assert project_zero_sum((5, 5, 5, 5)) == (0, 0, 0, 0)


def test_project_zero_sum_linear_idempotent():
    rng = np.random.default_rng(4)
    for _ in range(10):
        x = rng.normal(size=3)
        y = rng.normal(size=3)
        px = np.array(project_zero_sum(tuple(x)))
        py = np.array(project_zero_sum(tuple(y)))
        pxy = np.array(project_zero_sum(tuple(2 * x + y)))
        assert np.allclose(pxy, 2 * px + py, atol=1e-14)
        assert np.allclose(project_zero_sum(tuple(px)), px, atol=1e-14)
        assert abs(px.sum()) < 1e-14


def test_partition_basics():
    p = Partition((3, 1, 0))
    assert p.weight == 4
    assert p.length == 2
    assert p == Partition((3, 1))
    assert hash(p) == hash(Partition((3, 1)))
    with pytest.raises(InvalidInputError):
        Partition((1, 2))
    with pytest.raises(InvalidInputError):
        Partition((2, -1))


def test_dominance_examples():
    assert dominance_leq((1, 1), (2, 0))
    assert not dominance_leq((2, 0), (1, 1))
    assert not dominance_leq((3,), (2, 1))
    assert dominance_leq((2, 1), (3,))
    assert not dominance_leq((2,), (1, 1, 1))  # unequal weight
    assert not dominance_leq((2, 1), (2, 2))  # unequal weight


def test_dominance_is_partial_order_small_weights():
    for weight in range(0, 9):
        parts = list(partitions_of(weight, weight if weight else 1))
        for a in parts:
            assert dominance_leq(a, a)
        for a, b in itertools.permutations(parts, 2):
            if dominance_leq(a, b) and dominance_leq(b, a):
                assert a == b
        for a, b, c in itertools.product(parts, repeat=3):
            if dominance_leq(a, b) and dominance_leq(b, c):
                assert dominance_leq(a, c)


def test_partitions_of_lex_descending():
    parts = list(partitions_of(6, 3))
    assert parts[0] == (6,)
    assert parts == sorted(parts, reverse=True)
    assert all(sum(p) == 6 and len(p) <= 3 for p in parts)


def test_hull_examples():
    lam = (2.0, 0.5, -2.5)
    assert in_convex_hull(lam, lam)
    assert in_convex_hull((0.0, 0.0, 0.0), lam)
    eps = 1e-6
    assert not in_convex_hull((lam[0] + eps, lam[1], lam[2] - eps), lam)


def test_hull_permutation_invariance():
    rng = np.random.default_rng(5)
    lam = (1.5, 0.25, -1.75)
    for _ in range(30):
        w = rng.dirichlet(np.ones(4))
        pts = [np.array(lam)[rng.permutation(3)] for _ in range(4)]
        nu = sum(wi * p for wi, p in zip(w, pts))
        nu -= nu.sum() / 3
        results = {
            in_convex_hull(tuple(nu[list(p)]), lam)
            for p in itertools.permutations(range(3))
        }
        assert results == {True}


def test_hull_dimension_mismatch():
    with pytest.raises(InvalidInputError):
        in_convex_hull((1.0, -1.0), (1.0, 0.0, -1.0))


def test_interlace_examples():
    assert interlace_check((2.0, 0.5), (3.0, 1.0, 0.0))
    assert not interlace_check((0.5, 2.0), (3.0, 1.0, 0.0))
    assert interlace_check((1.0,), (1.0, 1.0))  # degenerate box


def test_interlace_box_structure():
    lam = (3.0, 1.0, -2.0)
    rng = np.random.default_rng(6)
    for _ in range(50):
        nu = (rng.uniform(1.0, 3.0), rng.uniform(-2.0, 1.0))
        assert interlace_check(nu, lam)
    assert not interlace_check((3.5, 0.0), lam)
    with pytest.raises(InvalidInputError):
        interlace_check((1.0,), lam)


def test_multiplicity():
    assert Multiplicity(0.5).singular
    assert not Multiplicity(Fraction(3, 2)).singular
    assert float(Multiplicity(Fraction(1, 2))) == 0.5
    with pytest.raises(InvalidInputError):
        Multiplicity(0.0)
    with pytest.raises(InvalidInputError):
        Multiplicity(-1.0)
