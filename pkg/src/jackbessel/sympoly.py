"""Exact symmetric polynomials in N variables with rational coefficients.

A polynomial is a dict mapping exponent tuples to ``Fraction``; symmetry
means the coefficient map is constant on permutation orbits of exponents.
The module provides the monomial symmetric basis, conversion to and from
it, and the degree-preserving Laplace-Beltrami type operator

    L_k = sum_i x_i^2 d^2/dx_i^2 + 2k sum_{i != j} x_i^2/(x_i - x_j) d/dx_i

whose triangular action on the monomial basis defines the Jack family.
The divided-difference part is evaluated exactly: for symmetric input the
pair numerator x_i^2 d_i p - x_j^2 d_j p is antisymmetric in (i, j), hence
divisible by (x_i - x_j); the division is synthetic in x_i and a nonzero
remainder raises, catching any symmetry violation immediately.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from functools import lru_cache
from typing import Iterable, Mapping

from .chamber import Partition, as_partition
from .errors import InternalConsistencyError, InvalidInputError

# Dense orbit expansion grows combinatorially; refuse silly sizes unless
# explicitly overridden.
MAX_WEIGHT = 12
MAX_VARS = 6

Exponent = tuple[int, ...]


class SymPoly:
    """Immutable multivariate polynomial with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction] | None = None):
        self.nvars = int(nvars)
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for expo, c in terms.items():
                if len(expo) != self.nvars:
                    raise InvalidInputError(f"exponent {expo} does not have {self.nvars} entries")
                c = Fraction(c)
                if c != 0:
                    clean[tuple(int(e) for e in expo)] = c
        self.terms = clean

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "SymPoly") -> "SymPoly":
        self._check_compat(other)
        out = dict(self.terms)
        for expo, c in other.terms.items():
            _accumulate(out, expo, c)
        return SymPoly(self.nvars, out)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        self._check_compat(other)
        out = dict(self.terms)
        for expo, c in other.terms.items():
            _accumulate(out, expo, -c)
        return SymPoly(self.nvars, out)

    def __mul__(self, other):
        if isinstance(other, SymPoly):
            self._check_compat(other)
            out: dict[Exponent, Fraction] = {}
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    _accumulate(out, tuple(a + b for a, b in zip(ea, eb)), ca * cb)
            return SymPoly(self.nvars, out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "SymPoly":
        c = Fraction(c)
        return SymPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SymPoly) and self.nvars == other.nvars and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def evaluate(self, point: Iterable):
        """Evaluate at a point; exact when all coordinates are rational."""
        point = tuple(point)
        if len(point) != self.nvars:
            raise InvalidInputError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = None
        for expo, c in sorted(self.terms.items()):
            val = c
            for x, e in zip(point, expo):
                if e:
                    val = val * x ** e
            total = val if total is None else total + val
        if total is None:
            return Fraction(0) if all(isinstance(x, (int, Fraction)) for x in point) else 0.0
        return total

    def substitute_last_zero(self) -> "SymPoly":
        """Set the last variable to zero, returning a polynomial in one fewer variable."""
        if self.nvars == 0:
            raise InvalidInputError("no variable to eliminate")
        out: dict[Exponent, Fraction] = {}
        for expo, c in self.terms.items():
            if expo[-1] == 0:
                out[expo[:-1]] = c
        return SymPoly(self.nvars - 1, out)

    def _check_compat(self, other: "SymPoly"):
        if self.nvars != other.nvars:
            raise InvalidInputError("variable counts differ")

    def __repr__(self) -> str:
        items = ", ".join(f"{e}: {c}" for e, c in sorted(self.terms.items()))
        return f"SymPoly({self.nvars}, {{{items}}})"


def _accumulate(store: dict, expo: Exponent, c: Fraction):
    new = store.get(expo, Fraction(0)) + c
    if new:
        store[expo] = new
    else:
        store.pop(expo, None)


@lru_cache(maxsize=None)
def _distinct_permutations(padded: Exponent) -> tuple[Exponent, ...]:
    return tuple(sorted(set(permutations(padded))))


def monomial_symmetric(lam, nvars: int, *, allow_large: bool = False) -> SymPoly:
    """The monomial symmetric polynomial: sum of all distinct permutations
    of the exponent ``lam`` padded to ``nvars`` variables."""
    lam = as_partition(lam)
    if lam.length > nvars:
        raise InvalidInputError(f"partition {lam.trimmed()} needs more than {nvars} variables")
    if not allow_large and (lam.weight > MAX_WEIGHT or nvars > MAX_VARS):
        raise InvalidInputError(
            f"refusing |partition| > {MAX_WEIGHT} or more than {MAX_VARS} variables "
            f"(got weight {lam.weight}, {nvars} vars); pass allow_large=True to override"
        )
    one = Fraction(1)
    return SymPoly(nvars, {p: one for p in _distinct_permutations(lam.padded(nvars))})


def to_monomial_coeffs(p: SymPoly) -> dict[tuple[int, ...], Fraction]:
    """Expand a symmetric polynomial over the monomial symmetric basis.

    Keys are trimmed partition tuples.  Raises if the input is not actually
    symmetric (orbit coefficients disagree).
    """
    coeff: dict[tuple[int, ...], Fraction] = {}
    count: dict[tuple[int, ...], int] = {}
    for expo, c in p.terms.items():
        key = tuple(sorted(expo, reverse=True))
        if key in coeff:
            if coeff[key] != c:
                raise InternalConsistencyError(
                    f"asymmetric coefficients on the orbit of {key}: {coeff[key]} vs {c}"
                )
            count[key] += 1
        else:
            coeff[key] = c
            count[key] = 1
    for key in coeff:
        if count[key] != len(_distinct_permutations(key)):
            raise InternalConsistencyError(
                f"orbit of {key} is incomplete: {count[key]} of {len(_distinct_permutations(key))} terms"
            )
    return {Partition(key).trimmed(): c for key, c in coeff.items()}


def from_monomial_coeffs(coeffs: Mapping, nvars: int, *, allow_large: bool = False) -> SymPoly:
    total = SymPoly(nvars)
    for lam, c in coeffs.items():
        total = total + monomial_symmetric(lam, nvars, allow_large=allow_large).scale(c)
    return total


def _xi2_di(p: SymPoly, i: int) -> dict[Exponent, Fraction]:
    """Terms of x_i^2 * d/dx_i applied to p."""
    out: dict[Exponent, Fraction] = {}
    for expo, c in p.terms.items():
        a = expo[i]
        if a:
            lifted = expo[:i] + (a + 1,) + expo[i + 1:]
            _accumulate(out, lifted, c * a)
    return out


def _divide_linear(q: dict[Exponent, Fraction], i: int, j: int, nvars: int) -> dict[Exponent, Fraction]:
    """Divide the polynomial ``q`` by (x_i - x_j) by synthetic division in x_i.

    The remainder must vanish; anything else means the caller fed a
    non-symmetric polynomial to the operator.
    """
    by_deg: dict[int, dict[Exponent, Fraction]] = {}
    for expo, c in q.items():
        d = expo[i]
        stripped = expo[:i] + (0,) + expo[i + 1:]
        _accumulate(by_deg.setdefault(d, {}), stripped, c)
    if not by_deg:
        return {}
    top = max(by_deg)
    quotient: dict[Exponent, Fraction] = {}
    carry: dict[Exponent, Fraction] = {}
    for d in range(top, 0, -1):
        # coefficient (in x_i^d) plus x_j times the previous carry
        level = dict(by_deg.get(d, {}))
        for expo, c in carry.items():
            bumped = expo[:j] + (expo[j] + 1,) + expo[j + 1:]
            _accumulate(level, bumped, c)
        for expo, c in level.items():
            _accumulate(quotient, expo[:i] + (d - 1,) + expo[i + 1:], c)
        carry = level
    remainder = dict(by_deg.get(0, {}))
    for expo, c in carry.items():
        bumped = expo[:j] + (expo[j] + 1,) + expo[j + 1:]
        _accumulate(remainder, bumped, c)
    if remainder:
        raise InternalConsistencyError(
            f"nonzero remainder dividing by (x_{i} - x_{j}); input was not symmetric"
        )
    return quotient


def laplace_beltrami(p: SymPoly, k) -> SymPoly:
    """Apply L_k to a symmetric polynomial, exactly.

    Linear over the rationals and degree preserving.  On the monomial basis
    the action is triangular with respect to dominance order, which is what
    makes the Jack construction a back-substitution.
    """
    k = Fraction(k)
    out: dict[Exponent, Fraction] = {}
    # x_i^2 second derivatives act diagonally on monomials
    for expo, c in p.terms.items():
        s = sum(a * (a - 1) for a in expo)
        if s:
            _accumulate(out, expo, c * s)
    # pairwise divided differences
    for i in range(p.nvars):
        for j in range(i + 1, p.nvars):
            num = _xi2_di(p, i)
            for expo, c in _xi2_di(p, j).items():
                _accumulate(num, expo, -c)
            for expo, c in _divide_linear(num, i, j, p.nvars).items():
                _accumulate(out, expo, 2 * k * c)
    return SymPoly(p.nvars, out)
