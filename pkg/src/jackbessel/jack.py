"""Jack polynomials, monic in the monomial symmetric basis.

A Jack polynomial is constructed as the unique eigenfunction of the
Laplace-Beltrami type operator from :mod:`.sympoly` of the form

    j = m_lam + sum over partitions mu strictly below lam (dominance) of a_mu m_mu.

The eigenvalue is read off as the diagonal coefficient of m_lam in
L_k m_lam (never taken from a closed form), and the remaining coefficients
are obtained by exact back-substitution down any linear extension of the
dominance order; lexicographically descending works because dominance
implies lexicographic order.

Construction results are cached per (partition, variable count, k); the
cache is append-only and idempotent, so concurrent duplicate constructions
are harmless.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .chamber import Partition, as_partition, dominance_leq, partitions_of
from .errors import DegenerateParameterError, InvalidInputError
from .sympoly import (
    SymPoly,
    from_monomial_coeffs,
    laplace_beltrami,
    monomial_symmetric,
    to_monomial_coeffs,
)


@dataclass(frozen=True)
class JackPolynomial:
    partition: tuple[int, ...]
    nvars: int
    k: Fraction
    coeffs: Mapping[tuple[int, ...], Fraction]  # monomial-basis expansion, keys trimmed
    eigenvalue: Fraction

    @property
    def weight(self) -> int:
        return sum(self.partition)

    def assemble(self) -> SymPoly:
        return from_monomial_coeffs(self.coeffs, self.nvars, allow_large=True)


_CACHE: dict[tuple, JackPolynomial] = {}


@lru_cache(maxsize=None)
def _lk_matrix_column(mu: tuple[int, ...], nvars: int, k: Fraction) -> dict:
    """Monomial-basis expansion of L_k applied to m_mu."""
    return to_monomial_coeffs(laplace_beltrami(monomial_symmetric(mu, nvars), k))


def jack_construct(lam, nvars: int, k, *, allow_large: bool = False) -> JackPolynomial:
    """Construct the monic Jack polynomial indexed by ``lam`` in ``nvars`` variables.

    ``k`` must be positive; it is converted to an exact Fraction (binary
    floats convert exactly) so the solve is exact.  Raises
    DegenerateParameterError on an eigenvalue collision, which does not
    occur for k > 0 but is surfaced rather than perturbed away.
    """
    lam = as_partition(lam)
    k = Fraction(k)
    if k <= 0:
        raise InvalidInputError(f"k must be positive, got {k}")
    if lam.length > nvars:
        raise InvalidInputError(f"partition {lam.trimmed()} needs more than {nvars} variables")
    key = (lam.trimmed(), nvars, k)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit

    if allow_large:
        columns = {
            mu: to_monomial_coeffs(laplace_beltrami(monomial_symmetric(mu, nvars, allow_large=True), k))
            for mu in _dominated_partitions(lam, nvars)
        }
    else:
        columns = {mu: _lk_matrix_column(mu, nvars, k) for mu in _dominated_partitions(lam, nvars)}

    order = sorted(columns, reverse=True)  # lex descending refines dominance
    top = lam.trimmed()
    eigenvalue = columns[top].get(top, Fraction(0))
    coeffs: dict[tuple[int, ...], Fraction] = {top: Fraction(1)}
    for nu in order:
        if nu == top:
            continue
        # eigen-equation row for m_nu: sum over processed mu >= nu of
        # M[nu][mu] a_mu  =  eigenvalue * a_nu, with M[nu][nu] on the left.
        rhs = Fraction(0)
        for mu, a_mu in coeffs.items():
            rhs += columns[mu].get(nu, Fraction(0)) * a_mu
        pivot = eigenvalue - columns[nu].get(nu, Fraction(0))
        if pivot == 0:
            raise DegenerateParameterError(
                f"eigenvalue collision between {top} and {nu} at k={k}"
            )
        a_nu = rhs / pivot
        if a_nu:
            coeffs[nu] = a_nu

    jp = JackPolynomial(top, nvars, k, coeffs, eigenvalue)
    _CACHE[key] = jp
    return jp


def _dominated_partitions(lam: Partition, nvars: int) -> list[tuple[int, ...]]:
    top = lam.trimmed()
    return [mu for mu in partitions_of(lam.weight, nvars) if dominance_leq(mu, top)]


@lru_cache(maxsize=None)
def _orbit(mu: tuple[int, ...], nvars: int) -> tuple[tuple[int, ...], ...]:
    padded = mu + (0,) * (nvars - len(mu))
    return tuple(sorted(set(permutations(padded))))


def jack_eval(jp: JackPolynomial, x: Sequence):
    """Evaluate a Jack polynomial at a point; exact for rational coordinates."""
    x = tuple(x)
    if len(x) != jp.nvars:
        raise InvalidInputError(f"point has {len(x)} coordinates, expected {jp.nvars}")
    exact = all(isinstance(c, (int, Fraction)) for c in x)
    total = Fraction(0) if exact else 0.0
    xs = x if exact else tuple(float(c) for c in x)
    for mu, c in sorted(jp.coeffs.items()):
        m_val = Fraction(0) if exact else 0.0
        for expo in _orbit(mu, jp.nvars):
            term = xs[0] ** expo[0] if expo[0] else (Fraction(1) if exact else 1.0)
            for xi, e in zip(xs[1:], expo[1:]):
                if e:
                    term = term * xi ** e
            m_val += term
        total += (c if exact else float(c)) * m_val
    return total


def jack_eval_many(jp: JackPolynomial, points: np.ndarray) -> np.ndarray:
    """Vectorized float evaluation over an (m, nvars) array of points."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != jp.nvars:
        raise InvalidInputError(f"expected an (m, {jp.nvars}) array, got {points.shape}")
    total = np.zeros(points.shape[0])
    for mu, c in sorted(jp.coeffs.items()):
        m_val = np.zeros(points.shape[0])
        for expo in _orbit(mu, jp.nvars):
            term = np.ones(points.shape[0])
            for col, e in enumerate(expo):
                if e:
                    term = term * points[:, col] ** e
            m_val += term
        total += float(c) * m_val
    return total
