"""Partitions, sorted zero-sum vectors, dominance order and interlacing.

Vectors live in plain tuples so that everything here works for floats,
ints and ``fractions.Fraction`` alike.  Floating-point membership tests
(zero coordinate sum, convex hull of a permutation orbit) use tolerances
relative to the largest coordinate magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInputError

# Default relative tolerances for zero-sum and hull membership tests.
REL_TOL_SUM = 1e-12
REL_TOL_HULL = 1e-12


def _is_finite(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    return math.isfinite(x)


def coord_scale(v: Sequence) -> float:
    """Largest coordinate magnitude, used to scale relative tolerances."""
    return max((abs(float(x)) for x in v), default=0.0)


class Partition:
    """Weakly decreasing tuple of nonnegative integers.

    Trailing zeros are allowed on input; equality and hashing ignore them,
    so ``Partition((2, 1, 0)) == Partition((2, 1))``.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        for p in parts:
            if p < 0:
                raise InvalidInputError(f"partition parts must be nonnegative, got {parts}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise InvalidInputError(f"partition parts must be weakly decreasing, got {parts}")
        self.parts = parts

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.trimmed())

    def trimmed(self) -> tuple[int, ...]:
        parts = self.parts
        n = len(parts)
        while n > 0 and parts[n - 1] == 0:
            n -= 1
        return parts[:n]

    def padded(self, n: int) -> tuple[int, ...]:
        t = self.trimmed()
        if len(t) > n:
            raise InvalidInputError(f"partition {t} has more than {n} parts")
        return t + (0,) * (n - len(t))

    def __eq__(self, other) -> bool:
        if isinstance(other, Partition):
            return self.trimmed() == other.trimmed()
        if isinstance(other, tuple):
            return self.trimmed() == Partition(other).trimmed()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.trimmed())

    def __repr__(self) -> str:
        return f"Partition{self.parts!r}"

    def __iter__(self):
        return iter(self.parts)


def as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(tuple(p))


def partitions_of(weight: int, max_parts: int, max_first: int | None = None):
    """Yield all partitions of ``weight`` with at most ``max_parts`` parts,
    largest part at most ``max_first``, in lexicographically descending order."""
    if max_first is None:
        max_first = weight
    if weight == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(weight, max_first), 0, -1):
        for rest in partitions_of(weight - first, max_parts - 1, first):
            yield (first,) + rest


@dataclass(frozen=True)
class ChamberPoint:
    """A vector sorted in decreasing order.

    Membership in the zero-sum hyperplane is not enforced at construction
    (sorting is useful for arbitrary vectors); Bessel-type evaluations check
    it at their own entry points via :func:`is_zero_sum`.
    """

    coords: tuple

    def __post_init__(self):
        for x in self.coords:
            if not _is_finite(x):
                raise InvalidInputError(f"non-finite coordinate in {self.coords}")
        for a, b in zip(self.coords, self.coords[1:]):
            if not a >= b:
                raise InvalidInputError(f"coordinates not sorted decreasingly: {self.coords}")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def sort_descending(v: Sequence) -> tuple[ChamberPoint, tuple[int, ...]]:
    """Sort a vector decreasingly; ties broken by original index (stable).

    Returns the sorted point and the permutation ``perm`` such that
    ``sorted[j] == v[perm[j]]``.
    """
    v = tuple(v)
    for x in v:
        if not _is_finite(x):
            raise InvalidInputError(f"non-finite coordinate in {v}")
    order = sorted(range(len(v)), key=lambda i: (-float(v[i]), i))
    return ChamberPoint(tuple(v[i] for i in order)), tuple(order)


def project_zero_sum(x: Sequence):
    """Orthogonal projection onto the zero-sum hyperplane: subtract the mean.

    Exact for rational input; idempotent; the dropped component is the
    mean times the all-ones vector.
    """
    x = tuple(x)
    if not x:
        return ()
    if all(isinstance(c, (int, Fraction)) for c in x):
        mean = Fraction(sum(Fraction(c) for c in x), len(x))
        return tuple(Fraction(c) - mean for c in x)
    for c in x:
        if not _is_finite(c):
            raise InvalidInputError(f"non-finite coordinate in {x}")
    mean = math.fsum(float(c) for c in x) / len(x)
    return tuple(float(c) - mean for c in x)


def is_zero_sum(v: Sequence, rel_tol: float = REL_TOL_SUM) -> bool:
    total = math.fsum(float(x) for x in v)
    return abs(total) <= rel_tol * max(coord_scale(v), 0.0) or total == 0.0


def dominance_leq(lam, mu) -> bool:
    """Dominance order: equal weight and every prefix sum of lam at most mu's."""
    a = as_partition(lam).trimmed()
    b = as_partition(mu).trimmed()
    if sum(a) != sum(b):
        return False
    n = max(len(a), len(b))
    sa = sb = 0
    for i in range(n):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa > sb:
            return False
    return True


def in_convex_hull(nu: Sequence, lam: Sequence, rel_tol: float = REL_TOL_HULL) -> bool:
    """Test membership of ``nu`` in the convex hull of the permutation orbit
    of ``lam``.

    Both vectors are expected to lie in the zero-sum hyperplane; membership
    reduces to the prefix-sum (majorization) inequalities between the sorted
    vectors.  Permutation-invariant in both arguments.
    """
    lam_c = tuple(lam.coords) if isinstance(lam, ChamberPoint) else tuple(lam)
    nu = tuple(nu)
    if len(nu) != len(lam_c):
        raise InvalidInputError(f"dimension mismatch: point has {len(nu)} coordinates, hull has {len(lam_c)}")
    scale = max(coord_scale(nu), coord_scale(lam_c))
    eps = rel_tol * scale
    total_nu = math.fsum(float(x) for x in nu)
    total_lam = math.fsum(float(x) for x in lam_c)
    if abs(total_nu - total_lam) > eps:
        return False
    ns = sorted((float(x) for x in nu), reverse=True)
    ls = sorted((float(x) for x in lam_c), reverse=True)
    pn = pl = 0.0
    for j in range(len(ns) - 1):
        pn += ns[j]
        pl += ls[j]
        if pn > pl + eps:
            return False
    return True


def interlace_check(nu: Sequence, lam: Sequence) -> bool:
    """Weak interlacing: lam[j+1] <= nu[j] <= lam[j] for every j."""
    lam_c = tuple(lam.coords) if isinstance(lam, ChamberPoint) else tuple(lam)
    nu = tuple(nu)
    if len(nu) != len(lam_c) - 1:
        raise InvalidInputError(
            f"interlacing point must have one coordinate fewer than the frame "
            f"({len(nu)} vs {len(lam_c)})"
        )
    for j in range(len(nu)):
        if not (float(lam_c[j + 1]) <= float(nu[j]) <= float(lam_c[j])):
            return False
    return True


@dataclass(frozen=True)
class Multiplicity:
    """Positive deformation parameter of the kernel family.

    Values below 1 put the quadrature layer in singular mode: the endpoint
    factors carry negative exponents and must be absorbed into Jacobi weights.
    """

    value: object  # float or Fraction

    def __post_init__(self):
        if not float(self.value) > 0:
            raise InvalidInputError(f"multiplicity must be positive, got {self.value}")

    @property
    def singular(self) -> bool:
        return float(self.value) < 1.0

    def __float__(self) -> float:
        return float(self.value)
