"""Okounkov-Olshanski branching integral, evaluated by quadrature.

The identity expresses a Jack polynomial in N variables at a decreasing
real vector lam as a normalized integral of the same Jack polynomial in
N - 1 variables over the interlacing box, against the Vandermonde factor
and the kernel

    Pi(lam, nu) = prod_{i <= j} (lam_i - nu_j)^(k-1) * prod_{i > j} (nu_j - lam_i)^(k-1).

Each coordinate nu_j of the box [lam_{j+1}, lam_j] owns exactly two factors
that vanish at its endpoints; those are folded into a Gauss-Jacobi weight
with alpha = beta = k - 1, and the remaining factors stay in the integrand
where they are smooth for strictly decreasing lam.  Comparing the
quadrature value with exact evaluation of the Jack expansion calibrates
the whole quadrature stack end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .chamber import Partition, as_partition
from .errors import DegenerateInputError, InvalidInputError, SingularEvaluationError
from .jack import jack_construct, jack_eval, jack_eval_many
from .quadrature import gauss_jacobi, map_to_interval, tensor_points

# Relative gap under which a decreasing vector is treated as degenerate:
# the Vandermonde normalization diverges as coordinates coalesce.
MIN_GAP_REL = 1e-9

RERROR_FLOOR = 1e-300


@dataclass(frozen=True)
class OOReport:
    """Outcome of one exact-versus-quadrature comparison."""

    lhs: float
    rhs: float
    rel_error: float
    quad_order: int
    mu: tuple[int, ...]
    lam: tuple[float, ...]
    k: float
    evaluations: int
    err_estimate: float
    tol: float = 1e-7
    passed: bool = True


def check_strictly_decreasing(lam: Sequence[float]) -> tuple[float, ...]:
    lam = tuple(float(x) for x in lam)
    if any(not math.isfinite(x) for x in lam):
        raise InvalidInputError(f"non-finite coordinate in {lam}")
    span = max(lam) - min(lam) if len(lam) > 1 else 0.0
    for a, b in zip(lam, lam[1:]):
        if a - b < MIN_GAP_REL * max(span, 1e-30):
            raise DegenerateInputError(
                f"coordinates too close for the 1/V normalization: {lam}"
            )
    return lam


def u_coeff(mu, nvars: int, k: float) -> float:
    """Product of Euler Beta factors B(mu_j + (nvars - j) k, k), j = 1..nvars-1."""
    mu = as_partition(mu)
    if mu.length > nvars - 1:
        raise InvalidInputError(f"partition {mu.trimmed()} must have fewer than {nvars} parts")
    k = float(k)
    if k <= 0:
        raise InvalidInputError(f"k must be positive, got {k}")
    padded = mu.padded(nvars - 1)
    log_u = 0.0
    for j, part in enumerate(padded, start=1):
        a = part + (nvars - j) * k
        if a <= 0:
            raise InvalidInputError(f"nonpositive Beta argument {a}")
        log_u += math.lgamma(a) + math.lgamma(k) - math.lgamma(a + k)
    return math.exp(log_u)


def vandermonde(v: Sequence[float]) -> float:
    """Product of pairwise differences v_i - v_j over i < j."""
    v = [float(x) for x in v]
    out = 1.0
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            out *= v[i] - v[j]
    return out


def _vandermonde_rows(pts: np.ndarray) -> np.ndarray:
    out = np.ones(pts.shape[0])
    d = pts.shape[1]
    for i in range(d):
        for j in range(i + 1, d):
            out = out * (pts[:, i] - pts[:, j])
    return out


def pi_kernel(lam: Sequence[float], nu: Sequence[float], k: float) -> float:
    """Full interlacing kernel Pi(lam, nu); exactly 1 when k = 1.

    For k < 1 a vanishing factor sits at a negative power; evaluation on
    the box boundary is then refused rather than returning inf.
    """
    lam = tuple(float(x) for x in lam)
    nu = tuple(float(x) for x in nu)
    if len(nu) != len(lam) - 1:
        raise InvalidInputError(f"point must have {len(lam) - 1} coordinates, got {len(nu)}")
    k = float(k)
    if k == 1.0:
        return 1.0
    out = 1.0
    for j, nu_j in enumerate(nu):
        for i, lam_i in enumerate(lam):
            diff = (lam_i - nu_j) if i <= j else (nu_j - lam_i)
            if diff == 0.0 and k < 1.0:
                raise SingularEvaluationError(
                    f"kernel factor vanishes at nu[{j}]={nu_j} with k={k} < 1"
                )
            out *= diff ** (k - 1.0)
    return out


def _log_pi_smooth(lam: tuple[float, ...], pts: np.ndarray, k: float) -> np.ndarray:
    """log of the kernel factors NOT absorbed by the per-dimension Jacobi
    weights: for column j these are i < j (lam_i - nu_j) and i > j + 1
    (nu_j - lam_i), all bounded away from zero on the closed box."""
    n = len(lam)
    out = np.zeros(pts.shape[0])
    if k == 1.0:
        return out
    for j in range(n - 1):
        col = pts[:, j]
        for i in range(n):
            if i == j or i == j + 1:
                continue
            diff = (lam[i] - col) if i < j else (col - lam[i])
            out += np.log(diff)
    return (k - 1.0) * out


def _interlace_rules(lam: tuple[float, ...], k: float, order: int):
    base = gauss_jacobi(order, k - 1.0, k - 1.0)
    return [map_to_interval(base, lam[j + 1], lam[j]) for j in range(len(lam) - 1)]


def _oo_quadrature(mu: Partition, lam: tuple[float, ...], k: float, order: int) -> tuple[float, int]:
    nvars = len(lam)
    jp = jack_construct(mu, nvars - 1, Fraction(k))
    rules = _interlace_rules(lam, k, order)
    pts, w = tensor_points(rules)
    vals = jack_eval_many(jp, pts) * _vandermonde_rows(pts) * np.exp(_log_pi_smooth(lam, pts, k))
    log_norm = -math.log(u_coeff(mu, nvars, k)) - (2 * k - 1) * math.log(vandermonde(lam))
    return math.exp(log_norm) * float(np.dot(w, vals)), pts.shape[0]


def oo_rhs(mu, lam: Sequence[float], k: float, order: int = 64) -> tuple[float, float, int]:
    """Quadrature value of the branching integral, with an error estimate
    from comparison against the half-order rule.

    Returns (value, err_estimate, evaluations).
    """
    mu = as_partition(mu)
    lam = check_strictly_decreasing(lam)
    k = float(k)
    if k <= 0:
        raise InvalidInputError(f"k must be positive, got {k}")
    if mu.length > len(lam) - 1:
        raise InvalidInputError(
            f"partition {mu.trimmed()} must have fewer than {len(lam)} parts"
        )
    if order < 1:
        raise InvalidInputError(f"order must be >= 1, got {order}")
    value, n_main = _oo_quadrature(mu, lam, k, order)
    half, n_half = _oo_quadrature(mu, lam, k, max(1, order // 2))
    return value, abs(value - half), n_main + n_half


def verify_oo(mu, lam: Sequence[float], k, order: int = 64, tol: float = 1e-7) -> OOReport:
    """Compare the quadrature side against exact Jack evaluation at lam.

    ``lam`` entries may be Fractions, in which case the exact side is
    evaluated in rational arithmetic before conversion to float.  The
    report's pass flag compares the relative error against ``tol``.
    """
    mu = as_partition(mu)
    lam_exact = tuple(lam)
    lam_f = check_strictly_decreasing([float(x) for x in lam_exact])
    if mu.length > len(lam_f) - 1:
        raise InvalidInputError(
            f"partition {mu.trimmed()} must have fewer than {len(lam_f)} parts"
        )
    jp = jack_construct(mu, len(lam_f), Fraction(k))
    exact_args = all(isinstance(x, (int, Fraction)) for x in lam_exact)
    lhs = float(jack_eval(jp, lam_exact if exact_args else lam_f))
    rhs, err, evals = oo_rhs(mu, lam_f, float(k), order)
    rel = abs(lhs - rhs) / max(abs(lhs), RERROR_FLOOR)
    return OOReport(
        lhs=lhs,
        rhs=rhs,
        rel_error=rel,
        quad_order=order,
        mu=mu.trimmed(),
        lam=lam_f,
        k=float(k),
        evaluations=evals,
        err_estimate=err,
        tol=tol,
        passed=rel <= tol,
    )
